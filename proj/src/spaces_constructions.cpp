#include "etw/spaces/constructions.hpp"

#include "etw/kernel/assembler.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <stdexcept>

namespace etw::spaces {

using trees::FiniteSeq;

TreeSpace build_X_T(const trees::Tree& t) {
  TreeSpace ts;
  std::vector<std::pair<std::uint64_t, FiniteSeq>> rows;
  std::uint64_t max_entry = 0;
  for (const auto& v : t.vertices()) {
    auto c = trees::delta_code(v);
    if (!c) throw std::range_error("vertex code exceeds 64 bits: " + trees::format_seq(v));
    rows.emplace_back(*c, v);
    for (auto a : v) max_entry = std::max(max_entry, a);
  }
  std::sort(rows.begin(), rows.end());
  for (auto& [c, v] : rows) {
    ts.codes.push_back(c);
    ts.vertices.push_back(v);
    ts.space.points.push_back(trees::format_seq(v));
  }
  const std::size_t k = rows.size();

  auto opens = std::make_shared<std::map<std::uint64_t, PointSet>>();
  for (std::size_t i = 0; i < k; ++i) {
    PointSet s(k);
    for (std::size_t p = 0; p < k; ++p)
      if (trees::prefix_leq(ts.vertices[i], ts.vertices[p])) s.set(p);
    opens->emplace(ts.codes[i], s);
  }
  auto vertex = std::make_shared<std::map<std::uint64_t, FiniteSeq>>();
  for (std::size_t i = 0; i < k; ++i) vertex->emplace(ts.codes[i], ts.vertices[i]);

  auto& x = ts.space;
  x.name = "X_T";
  x.alpha = [opens, k](std::uint64_t n) {
    auto it = opens->find(n);
    return it == opens->end() ? PointSet(k) : it->second;
  };
  x.basis = ts.codes;
  // (m+1) with m the largest entry is never a vertex; its code is 2^(m+2) - 1.
  x.empty_index = *trees::delta_code({max_entry + 1});
  const auto empty = x.empty_index;
  x.g = [vertex, empty](std::uint64_t i, std::uint64_t j, std::uint64_t) {
    auto a = vertex->find(i), b = vertex->find(j);
    if (a == vertex->end() || b == vertex->end()) return empty;
    if (trees::prefix_leq(a->second, b->second)) return j;
    if (trees::prefix_leq(b->second, a->second)) return i;
    return empty;
  };
  x.g_span = 1;

  for (std::size_t n = 0; n < k; ++n) {
    ts.witness.b.push_back(n);
    ts.witness.o.push_back({ts.codes[n]});
  }
  return ts;
}

FinSet gamma_star(const FinSet& a) {
  std::vector<std::uint64_t> v(a.begin(), a.end());
  if (v.size() > 20) throw std::range_error("gamma_star: set too large");
  FinSet out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << v.size()); ++mask) {
    FinSet d;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (mask >> i & 1) d.insert(v[i]);
    auto code = to_u64(dn_encode(d));
    if (!code) throw std::range_error("gamma_star: D-code exceeds 64 bits");
    out.insert(*code);
  }
  return out;
}

ProgramIndex sigma_star(const ProgramIndex& sigma) {
  using kernel::Assembler;
  // G on pair(m, x): halt once x ∈ D_k for some k ∈ W_m (dovetailed over k <= t).
  Assembler g;
  {
    auto outer = g.label(), inner = g.label(), skip = g.label(), next_t = g.label();
    g.left(1, 2);
    g.right(1, 3);
    g.zero(4);
    g.zero(9);
    g.load(10, 1);
    g.bind(outer);
    g.zero(5);
    g.bind(inner);
    g.eval(2, 5, 4, 6);
    g.jump_if_equal(6, 9, skip);
    g.bit(5, 3, 7);
    g.jump_if_equal(7, 10, g.halt());
    g.bind(skip);
    g.jump_if_equal(5, 4, next_t);
    g.succ(5);
    g.jump(inner);
    g.bind(next_t);
    g.succ(4);
    g.jump(outer);
  }
  // H on pair(c, n): halt once every element of D_n is in W_c.
  Assembler h;
  {
    auto loop = h.label(), skip = h.label();
    h.left(1, 2);
    h.right(1, 3);
    h.zero(4);
    h.zero(9);
    h.bind(loop);
    h.jump_if_equal(3, 9, h.halt());
    h.bit(3, 9, 7);
    h.jump_if_equal(7, 9, skip);
    h.call(2, 4, 8);
    h.bind(skip);
    h.halve(3, 3);
    h.succ(4);
    h.jump(loop);
  }
  Assembler a;
  a.load(2, g.index().code);
  a.smn(2, 1, 3);
  a.load(4, sigma.code);
  a.call(4, 3, 5);
  a.load(6, h.index().code);
  a.smn(6, 5, 1);
  return a.index();
}

FamilySpace build_X_S(const numberings::WnFamily& s, std::uint64_t bound, std::uint64_t budget,
                      std::uint64_t search) {
  if (!s.members) throw std::invalid_argument("build_X_S needs an explicit family");
  numberings::PrincipalNumbering gamma(s);
  auto surj = numberings::surjectivity_check(gamma, search, bound, budget);
  FamilySpace fs{Space{}, gamma, {}, {}, {}};
  for (std::size_t m = 0; m < s.members->size(); ++m) {
    if (!surj.index[m]) throw std::runtime_error("no index found for member " + format_set((*s.members)[m]));
    fs.representatives.push_back(*surj.index[m]);
    auto cls = gamma.below(*surj.index[m], bound, budget);
    fs.classes.push_back(cls ? *cls : FinSet{});
    fs.space.points.push_back(format_set(fs.classes.back()));
  }

  const std::size_t k = fs.classes.size();
  auto classes = std::make_shared<std::vector<FinSet>>(fs.classes);
  auto& x = fs.space;
  x.name = "X_S";
  x.alpha = [classes, k](std::uint64_t n) {
    PointSet out(k);
    auto d = dn_decode(Nat(n));
    for (std::size_t p = 0; p < k; ++p)
      if (std::includes((*classes)[p].begin(), (*classes)[p].end(), d.begin(), d.end())) out.set(p);
    return out;
  };
  FinSet basis;
  std::uint64_t top = 0;
  for (const auto& c : fs.classes) {
    auto g = gamma_star(c);
    basis.insert(g.begin(), g.end());
    if (!c.empty()) top = std::max(top, *c.rbegin() + 1);
  }
  x.basis.assign(basis.begin(), basis.end());
  x.empty_index = std::uint64_t{1} << top;
  x.g = [](std::uint64_t i, std::uint64_t j, std::uint64_t) { return i | j; };
  x.g_span = 1;

  fs.star.sigma = sigma_star(s.sigma);
  std::vector<FinSet> stars;
  for (const auto& m : *s.members) stars.push_back(gamma_star(m));
  fs.star.members = stars;
  return fs;
}

CheckResult homeomorphism_check(const FamilySpace& xs, const std::vector<FinSet>& members, unsigned bits) {
  CheckResult r{"homeomorphism", Verdict::Verified, nullptr, 0};
  const auto& x = xs.space;
  // f([i]) = γ(i): a bijection between points and members.
  std::vector<std::size_t> f(x.size());
  std::vector<bool> hit(members.size(), false);
  for (std::size_t p = 0; p < x.size(); ++p) {
    auto it = std::find(members.begin(), members.end(), xs.classes[p]);
    if (it == members.end() || hit[it - members.begin()]) {
      r.verdict = Verdict::Refuted;
      r.witness = {{"clause", "bijection"}, {"point", x.points[p]}};
      return r;
    }
    f[p] = it - members.begin();
    hit[f[p]] = true;
  }
  if (std::find(hit.begin(), hit.end(), false) != hit.end()) {
    r.verdict = Verdict::Refuted;
    r.witness = {{"clause", "bijection"}, {"missing_member", format_set(members[std::find(hit.begin(), hit.end(), false) - hit.begin()])}};
    return r;
  }
  for (std::uint64_t n = 0; n < (std::uint64_t{1} << bits); ++n) {
    auto d = dn_decode(Nat(n));
    auto a = x.alpha(n);
    for (std::size_t p = 0; p < x.size(); ++p) {
      const auto& v = members[f[p]];
      bool in_beta = std::includes(v.begin(), v.end(), d.begin(), d.end());
      if (in_beta != a.test(p)) {
        r.verdict = Verdict::Refuted;
        r.witness = {{"clause", "basis"}, {"n", n}, {"member", format_set(v)}, {"in_beta", in_beta}};
        return r;
      }
    }
  }
  r.saturation_stage = std::uint64_t{1} << bits;
  return r;
}

}  // namespace etw::spaces
