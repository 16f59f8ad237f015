#include "etw/trees/tree.hpp"

#include "etw/kernel/machine.hpp"

#include <algorithm>
#include <map>

namespace etw::trees {

Tree Tree::explicit_tree(std::set<FiniteSeq> vertices) {
  if (!vertices.contains(FiniteSeq{})) throw std::invalid_argument("tree must contain ()");
  for (const auto& v : vertices)
    if (!v.empty() && !vertices.contains(FiniteSeq(v.begin(), v.end() - 1)))
      throw std::invalid_argument("tree is not downward closed at " + format_seq(v));
  Tree t;
  t.kind_ = Kind::Explicit;
  t.vertices_ = std::move(vertices);
  return t;
}

Tree Tree::program_tree(ProgramIndex membership, std::uint64_t budget) {
  Tree t;
  t.kind_ = Kind::Program;
  t.membership_ = std::move(membership);
  t.budget_ = budget;
  return t;
}

Tree Tree::inseparable() {
  Tree t;
  t.kind_ = Kind::Inseparable;
  return t;
}

bool Tree::contains(const FiniteSeq& x) const {
  switch (kind_) {
    case Kind::Explicit: return vertices_.contains(x);
    case Kind::Inseparable: return inseparable_contains(x);
    case Kind::Program: {
      auto r = kernel::run_steps(membership_, delta_encode(x), budget_);
      if (!r.halted()) throw std::runtime_error("tree membership did not halt on " + format_seq(x));
      return !r.value->is_zero();
    }
  }
  return false;
}

const std::set<FiniteSeq>& Tree::vertices() const {
  if (kind_ != Kind::Explicit) throw std::logic_error("vertex list of a non-explicit tree");
  return vertices_;
}

Tree Tree::truncate(std::size_t depth, std::uint64_t alphabet) const {
  std::set<FiniteSeq> out{FiniteSeq{}};
  std::vector<FiniteSeq> level{FiniteSeq{}};
  for (std::size_t d = 0; d < depth && !level.empty(); ++d) {
    std::vector<FiniteSeq> next;
    for (const auto& v : level)
      for (std::uint64_t a = 0; a < alphabet; ++a) {
        auto w = v;
        w.push_back(a);
        if (contains(w)) next.push_back(w);
      }
    out.insert(next.begin(), next.end());
    level = std::move(next);
  }
  return explicit_tree(std::move(out));
}

Nat Tree::code() const {
  switch (kind_) {
    case Kind::Explicit: {
      Nat d = 0;
      for (const auto& v : vertices_) boost::multiprecision::bit_set(d, saturate_u64(delta_encode(v)));
      return pair(Nat(0), d);
    }
    case Kind::Program: return pair(Nat(1), membership_.code);
    case Kind::Inseparable: return pair(Nat(2), Nat(0));
  }
  return 0;
}

Tree Tree::from_code(const Nat& code) {
  auto [kind, data] = unpair(code);
  if (kind == 0) {
    std::set<FiniteSeq> v;
    for (auto c : dn_decode(data)) v.insert(delta_decode(c));
    return explicit_tree(std::move(v));
  }
  if (kind == 1) return program_tree({data});
  if (kind == 2) return inseparable();
  throw std::invalid_argument("unknown tree code");
}

PartialPath path_of_vertex(const Tree& t, const FiniteSeq& x) {
  if (!t.contains(x)) throw std::domain_error(format_seq(x) + " is not a vertex");
  auto p = prefixes(x);
  return PartialPath(p.begin(), p.end());
}

bool is_partial_path(const Tree& t, const PartialPath& p) {
  for (const auto& x : p) {
    if (!t.contains(x)) return false;
    if (!x.empty() && !p.contains(FiniteSeq(x.begin(), x.end() - 1))) return false;
    for (const auto& y : p)
      if (!prefix_leq(x, y) && !prefix_leq(y, x)) return false;
  }
  return true;
}

FinSet path_codes(const PartialPath& p) {
  FinSet out;
  for (const auto& x : p) {
    auto c = delta_code(x);
    if (!c) throw std::range_error("δ-code of " + format_seq(x) + " exceeds 64 bits");
    out.insert(*c);
  }
  return out;
}

std::vector<FinSet> s_T_members(const Tree& t) {
  std::vector<std::pair<Nat, FinSet>> rows;
  for (const auto& v : t.vertices()) rows.emplace_back(delta_encode(v), path_codes(path_of_vertex(t, v)));
  std::sort(rows.begin(), rows.end());
  std::vector<FinSet> out;
  for (auto& r : rows) out.push_back(std::move(r.second));
  return out;
}

Tree inseparable_tree() { return Tree::inseparable(); }

namespace {

// φ_i(i) with the smallest budget tried so far; results are reused across
// membership queries.
struct DiagonalRun {
  std::uint64_t tried = 0;
  std::optional<std::uint64_t> time;
  Nat value;
  bool never = false;
};

thread_local std::map<std::uint64_t, DiagonalRun> g_diagonal;

// Output of φ_i(i) when it halts within s steps (with i <= s).
std::optional<Nat> diagonal(std::uint64_t i, std::uint64_t s) {
  if (i > s) return std::nullopt;
  auto& d = g_diagonal[i];
  if (!d.time && !d.never && d.tried < s) {
    auto budget = std::max(s, 2 * d.tried);
    auto r = kernel::run_steps({Nat(i)}, i, budget);
    if (r.halted()) {
      d.time = r.steps_used;
      d.value = *r.value;
    } else if (r.diverged) {
      d.never = true;
    } else {
      d.tried = budget;
    }
  }
  if (d.time && *d.time <= s) return d.value;
  return std::nullopt;
}

}  // namespace

bool inseparable_contains(const FiniteSeq& x) {
  const std::uint64_t s = x.size();
  for (std::uint64_t i = 0; i < s; ++i) {
    if (x[i] > 1) return false;
    auto v = diagonal(i, s);
    if (!v) continue;
    if (*v == 0 && x[i] != 1) return false;
    if (*v == 1 && x[i] != 0) return false;
  }
  return true;
}

std::vector<Tree> enumerate_trees(std::size_t max_vertices, std::uint64_t alphabet) {
  // Grow trees by adding one child at a time; a tree is recorded the first
  // time its vertex set appears.
  std::set<std::set<FiniteSeq>> seen;
  std::vector<std::set<FiniteSeq>> frontier{{FiniteSeq{}}};
  seen.insert(frontier.front());
  for (std::size_t n = 1; n < max_vertices; ++n) {
    std::vector<std::set<FiniteSeq>> next;
    for (const auto& t : frontier)
      for (const auto& v : t)
        for (std::uint64_t a = 0; a < alphabet; ++a) {
          auto w = v;
          w.push_back(a);
          if (t.contains(w)) continue;
          auto u = t;
          u.insert(w);
          if (seen.insert(u).second) next.push_back(std::move(u));
        }
    frontier = std::move(next);
  }
  std::vector<Tree> out;
  for (const auto& t : seen) out.push_back(Tree::explicit_tree(t));
  return out;
}

}  // namespace etw::trees
