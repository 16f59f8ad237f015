// Acceptance run: one PASS/FAIL line per criterion, with wall time against a
// pinned limit. Usage: etw_acceptance PATH_TO_ETW [CRITERION...]

#include "etw/cli/commands.hpp"
#include "etw/cli/jobs.hpp"
#include "etw/domains/alpha_c.hpp"
#include "etw/domains/domain.hpp"
#include "etw/kernel/assembler.hpp"
#include "etw/kernel/library.hpp"
#include "etw/kernel/machine.hpp"
#include "etw/kernel/smn.hpp"
#include "etw/numberings/index_sets.hpp"
#include "etw/riceshapiro/riceshapiro.hpp"
#include "etw/spaces/constructions.hpp"
#include "etw/trees/sigma_t.hpp"
#include "support/random_programs.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include <unistd.h>

using namespace etw;
using etw::trees::FiniteSeq;
using spaces::PointSet;

namespace {

// Collects failures; only the first few are kept for the report line.
class Tally {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (notes_.size() < 3) notes_.push_back(what);
  }
  void note(const std::string& s) { info_.push_back(s); }
  bool ok() const { return failures_ == 0 && checks_ > 0; }
  std::string summary() const {
    std::ostringstream o;
    o << checks_ << " checks";
    if (failures_) o << ", " << failures_ << " failed";
    for (const auto& i : info_) o << "; " << i;
    for (const auto& n : notes_) o << " [" << n << "]";
    return o.str();
  }

 private:
  std::uint64_t checks_ = 0, failures_ = 0;
  std::vector<std::string> notes_, info_;
};

std::string str(const FinSet& f) { return format_set(f); }

std::uint64_t cantor(std::uint64_t x, std::uint64_t y) { return (x + y) * (x + y + 1) / 2 + y; }

// ------------------------------------------------------------ criterion 1

void kernel_algebra(Tally& t) {
  using namespace kernel;
  std::mt19937_64 rng(20260101);
  int halted = 0;
  for (int i = 0; i < 200; ++i) {
    auto e = encode_program(testing::random_extended_program(rng));
    Nat y = rng() % 32, x = rng() % 32;
    auto lhs = run_steps(smn(e, y), x, 100000);
    auto rhs = run_steps(e, pair(y, x), 100000);
    if (lhs.halted() || rhs.halted()) {
      ++halted;
      t.expect(lhs.halted() && rhs.halted() && *lhs.value == *rhs.value, "smn triple " + std::to_string(i));
    }
  }
  t.note(std::to_string(halted) + "/200 smn triples halted");

  // Transformers: constants, the self-printer, shifted self-printers and
  // z -> smn(add, z + k).
  std::vector<std::pair<ProgramIndex, std::function<Nat(const Nat& e, const Nat& x)>>> fs;
  for (unsigned k = 0; k < 8; ++k)
    fs.push_back({lib::constant(lib::constant(k).code), [k](const Nat&, const Nat&) { return Nat(k); }});
  fs.push_back({lib::constant_program_transformer(), [](const Nat& e, const Nat&) { return e; }});
  for (unsigned k = 1; k <= 6; ++k) {
    Assembler a;
    a.load(3, k);
    a.add(1, 3, 1);
    a.load(2, lib::constant_program_transformer().code);
    a.call(2, 1, 4);
    a.copy(4, 1);
    fs.push_back({a.index(), [k](const Nat& e, const Nat&) { return Nat(e + k); }});
  }
  for (unsigned k = 0; k < 5; ++k) {
    Assembler a;
    a.load(3, k);
    a.add(1, 3, 1);
    a.load(2, lib::add_pair().code);
    a.smn(2, 1, 4);
    a.copy(4, 1);
    fs.push_back({a.index(), [k](const Nat& e, const Nat& x) { return Nat(e + k + x); }});
  }
  t.expect(fs.size() == 20, "transformer count");
  for (std::size_t i = 0; i < fs.size(); ++i) {
    auto e = fixpoint(fs[i].first);
    auto fe = run_steps(fs[i].first, e.code, 100000);
    t.expect(fe.halted(), "transformer " + std::to_string(i) + " on its fixpoint");
    if (!fe.halted()) continue;
    for (unsigned x = 0; x <= 10; ++x) {
      auto a = run_steps(e, x, 1000000);
      auto b = run_steps(ProgramIndex{*fe.value}, x, 1000000);
      bool ok = a.halted() && b.halted() && *a.value == *b.value && *a.value == fs[i].second(e.code, x);
      t.expect(ok, "fixpoint " + std::to_string(i) + " x=" + std::to_string(x));
    }
  }
}

// ------------------------------------------------------------ criterion 2

std::vector<FinSet> powerset(unsigned u) {
  std::vector<FinSet> out;
  for (unsigned m = 0; m < (1u << u); ++m) {
    FinSet f;
    for (unsigned i = 0; i < u; ++i)
      if (m >> i & 1) f.insert(i);
    out.push_back(f);
  }
  return out;
}

// Every open predicate on the family, as the union of basic opens
// {E : E ⊇ F} over some set of generators F drawn from the family.
std::set<std::uint64_t> open_predicates(const std::vector<FinSet>& fam) {
  std::vector<std::uint64_t> up(fam.size());
  for (std::size_t f = 0; f < fam.size(); ++f)
    for (std::size_t e = 0; e < fam.size(); ++e)
      if (std::includes(fam[e].begin(), fam[e].end(), fam[f].begin(), fam[f].end())) up[f] |= std::uint64_t{1} << e;
  std::set<std::uint64_t> out;
  for (std::uint64_t gens = 0; gens < (std::uint64_t{1} << fam.size()); ++gens) {
    std::uint64_t k = 0;
    for (std::size_t f = 0; f < fam.size(); ++f)
      if (gens >> f & 1) k |= up[f];
    out.insert(k);
  }
  return out;
}

void classical_rs_family(Tally& t, const std::vector<FinSet>& fam) {
  auto open = open_predicates(fam);
  std::size_t n_open = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << fam.size()); ++mask) {
    std::vector<bool> k(fam.size());
    for (std::size_t i = 0; i < fam.size(); ++i) k[i] = mask >> i & 1;
    auto r = numberings::classical_rice_shapiro_oracle(fam, k);
    bool want = open.contains(mask);
    n_open += want;
    bool ok = r.open == want;
    ok = ok && (riceshapiro::monotone_check(fam, k).verdict == Verdict::Verified) == want;
    if (r.open) {
      // The generators must reproduce K exactly.
      for (std::size_t e = 0; e < fam.size() && ok; ++e) {
        bool covered = false;
        for (const auto& g : r.generators) covered |= std::includes(fam[e].begin(), fam[e].end(), g.begin(), g.end());
        ok = covered == k[e];
      }
    } else {
      ok = ok && r.counterexample.has_value();
      if (r.counterexample) {
        auto [a, b] = *r.counterexample;
        ok = ok && k[a] && !k[b] && std::includes(fam[b].begin(), fam[b].end(), fam[a].begin(), fam[a].end());
      }
    }
    t.expect(ok, "predicate mask " + std::to_string(mask) + " over " + std::to_string(fam.size()) + " members");
  }
  t.note(std::to_string(n_open) + " open of " + std::to_string(std::uint64_t{1} << fam.size()));
}

void classical_rs(Tally& t) {
  classical_rs_family(t, powerset(2));
  classical_rs_family(t, powerset(4));
}

// ------------------------------------------------------------ fixture trees

std::vector<trees::Tree> fixture_trees() {
  auto out = trees::enumerate_trees(6, 3);
  out.push_back(trees::inseparable_tree().truncate(6, 2));
  return out;
}

// Every nonempty finite partial path, found by brute force over vertex
// subsets closed under prefixes and linear under ⊑. Only for small trees.
std::set<FinSet> partial_paths_oracle(const std::vector<FiniteSeq>& verts) {
  std::set<FinSet> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << verts.size()); ++mask) {
    bool ok = true;
    for (std::size_t i = 0; i < verts.size() && ok; ++i) {
      if (!(mask >> i & 1)) continue;
      for (std::size_t j = 0; j < verts.size() && ok; ++j) {
        bool prefix = trees::prefix_leq(verts[j], verts[i]);
        if (prefix && !(mask >> j & 1)) ok = false;
        if ((mask >> j & 1) && !prefix && !trees::prefix_leq(verts[i], verts[j])) ok = false;
      }
    }
    if (!ok) continue;
    FinSet codes;
    for (std::size_t i = 0; i < verts.size(); ++i)
      if (mask >> i & 1) codes.insert(*trees::delta_code(verts[i]));
    out.insert(codes);
  }
  return out;
}

// Partial paths of a larger tree: the prefix sets of its vertices, built
// directly from the sequences.
std::set<FinSet> partial_paths_by_prefix(const std::vector<FiniteSeq>& verts) {
  std::set<FinSet> out;
  for (const auto& v : verts) {
    FinSet codes;
    for (std::size_t l = 0; l <= v.size(); ++l) codes.insert(*trees::delta_code(FiniteSeq(v.begin(), v.begin() + l)));
    out.insert(codes);
  }
  return out;
}

// ------------------------------------------------------------ criterion 3

struct SigmaOutcome {
  FinSet limit;
  std::uint64_t bound = 0;
  bool stable = false;
};

SigmaOutcome run_sigma(const trees::Tree& tr, const FinSet& w) {
  auto ce = numberings::CeSet::finite(w);
  std::uint64_t last = 0;
  for (auto x : w) last = std::max(last, *ce.entry(x, std::numeric_limits<std::uint64_t>::max()));
  SigmaOutcome o;
  // Output at stage s reads W^{s-1}; nothing enters after `last`.
  o.bound = last + 1;
  trees::SigmaTConstruction c(tr, ce);
  o.limit = c.at(o.bound);
  o.stable = c.at(2 * o.bound + 64) == o.limit;
  return o;
}

void sigma_t_convergence(Tally& t) {
  std::uint64_t max_bound = 0, paths = 0, non_paths = 0, empty_limits = 0;
  std::mt19937_64 rng(33);
  const auto extra = *trees::delta_code({3});  // never a vertex over {0,1,2}
  for (const auto& tr : fixture_trees()) {
    std::vector<FiniteSeq> verts(tr.vertices().begin(), tr.vertices().end());
    const bool small = verts.size() <= 6;
    auto oracle = small ? partial_paths_oracle(verts) : partial_paths_by_prefix(verts);
    auto members = trees::s_T_members(tr);
    t.expect(std::set<FinSet>(members.begin(), members.end()) == oracle, "s_T_members vs partial paths");

    auto check = [&](const FinSet& w) {
      auto o = run_sigma(tr, w);
      max_bound = std::max(max_bound, o.bound);
      t.expect(o.stable, "sigma_T settled by its bound on " + str(w));
      if (oracle.contains(w)) {
        ++paths;
        t.expect(o.limit == w, "path " + str(w) + " gave " + str(o.limit));
      } else {
        ++non_paths;
        empty_limits += o.limit.empty();
        t.expect(o.limit.empty() || (oracle.contains(o.limit) &&
                                     std::find(members.begin(), members.end(), o.limit) != members.end()),
                 "non-path " + str(w) + " gave " + str(o.limit));
      }
    };

    std::vector<std::uint64_t> pool;
    for (const auto& v : verts) pool.push_back(*trees::delta_code(v));
    pool.push_back(extra);
    if (small) {
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pool.size()); ++mask) {
        FinSet w;
        for (std::size_t i = 0; i < pool.size(); ++i)
          if (mask >> i & 1) w.insert(pool[i]);
        check(w);
      }
    } else {
      // Every path, every path plus one more code, and random subsets.
      for (const auto& p : oracle) {
        check(p);
        for (int j = 0; j < 4; ++j) {
          auto w = p;
          w.insert(pool[rng() % pool.size()]);
          check(w);
        }
      }
      for (int j = 0; j < 3000; ++j) {
        FinSet w;
        auto density = 1 + rng() % 8;
        for (auto c : pool)
          if (rng() % density == 0) w.insert(c);
        check(w);
      }
    }
  }
  t.note(std::to_string(paths) + " paths, " + std::to_string(non_paths) + " non-paths (" +
         std::to_string(empty_limits) + " with empty limit), stage bound " + std::to_string(max_bound));
}

// ------------------------------------------------------------ criterion 4

void alpha_c_domains(Tally& t) {
  auto ds = domains::enumerate_domains(6);
  t.expect(ds.size() == 4474, "domain count " + std::to_string(ds.size()));
  std::uint64_t runs = 0, max_bound = 0;
  for (const auto& d : ds) {
    const auto k = d.size();
    auto bound = domains::alpha_c_stage_bound(d);
    max_bound = std::max(max_bound, bound);
    for (std::size_t a = 0; a < k; ++a) {
      FinSet approx;
      for (std::size_t n = 0; n < k; ++n)
        if (d.leq(n, a)) approx.insert(n);
      t.expect(d.approx_set(a) == approx, "approx set");
      auto ch = domains::alpha_c(d, numberings::CeSet::finite(approx), bound);
      ++runs;
      bool ok = ch.value() == a;
      // Pr 1: every chain element is ≪ a. Pr 2: a ≤ the limit. The chain rises.
      for (std::size_t s = 0; s < ch.g.size() && ok; ++s) {
        ok = d.leq(ch.g[s], a);
        if (s > 0) ok = ok && d.leq(ch.g[s - 1], ch.g[s]);
      }
      ok = ok && d.leq(a, ch.value()) && ch.last_change() <= bound;
      t.expect(ok, "alpha_c on element " + std::to_string(a) + " of " + to_string(d.code()));
    }
    auto ds_ = domains::domain_to_modular(d);
    t.expect(spaces::ee_space_check(ds_.space).verdict == Verdict::Verified, "ee_space_check " + to_string(d.code()));
    t.expect(spaces::modular_check(ds_.space, ds_.witness).verdict == Verdict::Verified,
             "modular_check " + to_string(d.code()));
  }
  t.note(std::to_string(runs) + " alpha_c runs, largest stage bound " + std::to_string(max_bound));
}

// ------------------------------------------------------------ criterion 5

// Direct evaluation of both sides of the identity.
bool identity_oracle(const spaces::Space& x, const spaces::ModularWitness& w, const FinSet& v) {
  auto lhs = x.all();
  for (auto i : v) lhs &= x.alpha(i);
  auto rhs = x.none();
  for (std::size_t j = 0; j < w.b.size(); ++j)
    if (lhs.test(w.b[j])) {
      for (auto o : w.o[j]) rhs |= x.alpha(o);
    }
  return lhs == rhs;
}

void identity_over(Tally& t, const spaces::Space& x, const spaces::ModularWitness& w, std::uint64_t& count) {
  auto idx = x.check_indices();
  auto one = [&](const FinSet& v) {
    ++count;
    bool ok = spaces::intersection_identity_check(x, w, v).verdict == Verdict::Verified && identity_oracle(x, w, v);
    t.expect(ok, x.name + " V=" + str(v));
  };
  one({});
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a; b < idx.size(); ++b)
      for (std::size_t c = b; c < idx.size(); ++c) one({idx[a], idx[b], idx[c]});
}

void intersection_identity(Tally& t) {
  std::uint64_t tree_sets = 0, domain_sets = 0;
  for (const auto& tr : fixture_trees()) {
    auto ts = spaces::build_X_T(tr);
    identity_over(t, ts.space, ts.witness, tree_sets);
  }
  for (const auto& d : domains::enumerate_domains(6)) {
    auto ds = domains::domain_to_modular(d);
    identity_over(t, ds.space, ds.witness, domain_sets);
  }
  t.note(std::to_string(tree_sets) + " V over X_T, " + std::to_string(domain_sets) + " V over domain spaces");
}

// ------------------------------------------------------------ criterion 6

constexpr std::uint64_t kIndexSetBudget = 2000;

void rice_shapiro_on(Tally& t, const spaces::TreeSpace& ts, const PointSet& k, std::uint64_t& non_open_traces) {
  const auto& x = ts.space;
  const auto n = ts.vertices.size();
  // Oracle: upward closed under the prefix order of the vertices.
  bool up = true;
  std::optional<std::size_t> low;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (k.test(a) && !k.test(b) && trees::prefix_leq(ts.vertices[a], ts.vertices[b])) {
        up = false;
        if (!low) low = a;
      }
  auto fwd = riceshapiro::rs_forward(x, ts.witness, k);
  t.expect((fwd.verdict == Verdict::Verified) == up, "rs_forward on " + x.name);
  auto ix = riceshapiro::index_set_consistency(x, ts.witness, k, kIndexSetBudget);
  t.expect((ix.verdict == Verdict::Verified) == up, "index set enumerator on " + x.name);
  if (up) return;
  t.expect(fwd.violation.has_value(), "rs_forward violation");
  bool precondition_seen = false;
  for (std::size_t a = 0; a < n; ++a) {
    if (!k.test(a)) continue;
    auto tr = riceshapiro::non_open_witness(x, ts.witness, k, a);
    if (!tr.precondition) continue;
    precondition_seen = true;
    ++non_open_traces;
    bool ok = riceshapiro::non_open_trace_check(x, ts.witness, k, a, tr).verdict == Verdict::Verified;
    ok = ok && tr.records.size() == x.profile(a).size() + 1;
    for (const auto& r : tr.records) {
      // Re-verify each record from the definitions.
      auto b = ts.witness.b[std::min(r.n, ts.witness.b.size() - 1)];
      auto o = spaces::witness_open(x, ts.witness, r.n);
      auto inter = x.all();
      for (auto i : r.v_m) inter &= x.alpha(i);
      auto h = spaces::point_table(x, r.h);
      ok = ok && o.test(a) && inter.test(b) && inter.test(h) && !k.test(h) && r.u_m.contains(r.h);
    }
    t.expect(ok, "non-open trace at " + x.points[a]);
  }
  t.expect(precondition_seen, "some point of K without a separating open");
}

void rice_shapiro_general(Tally& t) {
  std::uint64_t preds = 0, traces = 0;
  std::mt19937_64 rng(66);
  for (const auto& tr : fixture_trees()) {
    auto ts = spaces::build_X_T(tr);
    const auto n = ts.space.size();
    if (n <= 6) {
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask, ++preds)
        rice_shapiro_on(t, ts, PointSet(n, mask), traces);
      continue;
    }
    // Larger trees: every basic open, every single point, and random sets.
    for (auto b : ts.space.basis) {
      rice_shapiro_on(t, ts, ts.space.alpha(b), traces);
      ++preds;
    }
    for (std::size_t a = 0; a < n; ++a) {
      PointSet k(n);
      k.set(a);
      rice_shapiro_on(t, ts, k, traces);
      ++preds;
    }
    for (int j = 0; j < 64; ++j) {
      PointSet k(n);
      for (std::size_t a = 0; a < n; ++a) k[a] = rng() & 1;
      rice_shapiro_on(t, ts, k, traces);
      ++preds;
    }
  }
  t.note(std::to_string(preds) + " predicates, " + std::to_string(traces) + " non-open traces, budget " +
         std::to_string(kIndexSetBudget));
}

// ------------------------------------------------------------ criterion 7

void branching_lemma(Tally& t) {
  for (const auto& inst : riceshapiro::branching_fixtures()) {
    auto r = riceshapiro::branching(inst, 1000000, 10);
    t.expect(r.verdict == Verdict::Verified && r.e && r.p && r.we == r.rhs, inst.name);
    if (r.p) t.note(inst.name + " p=" + std::to_string(*r.p) + " W_e=" + str(r.we));
  }
}

// ------------------------------------------------------------ criterion 8

void section_five(Tally& t) {
  using namespace riceshapiro;
  auto pf = product_family(numberings::subsets_family({0, 1}));
  std::set<FinSet> expect;
  for (std::uint64_t a = 0; a < 4; ++a)
    for (std::uint64_t b = 0; b < 4; ++b) {
      FinSet s;
      for (std::uint64_t x = 0; x < 2; ++x)
        for (std::uint64_t y = 0; y < 2; ++y)
          if ((a >> x & 1) && (b >> y & 1)) s.insert(cantor(x, y));
      expect.insert(s);
    }
  t.expect(pf.star.members && std::set<FinSet>(pf.star.members->begin(), pf.star.members->end()) == expect,
           "product members");
  if (pf.star.members) {
    std::vector<numberings::CeSet> cands;
    for (const auto& m : *pf.star.members) cands.push_back(numberings::CeSet::finite(m));
    auto recs = numberings::wn_check(pf.star, cands, 1000000, 8);
    for (std::size_t i = 0; i < recs.size(); ++i)
      t.expect(recs[i].verdict == Verdict::Verified && recs[i].member == i, "wn_check on product member " + str((*pf.star.members)[i]));
  }

  std::vector<FinSet> s{{0}, {1}};
  numberings::PrincipalNumbering g(numberings::discrete_family(s, {{0}, {1}}));
  auto surj = numberings::surjectivity_check(g, 40, 4, 20000);
  t.expect(surj.verdict == Verdict::Verified, "surjectivity for the diagonal demo");
  std::vector<Nat> idx{0, 1, 2, 3};
  for (const auto& i : surj.index)
    if (i) idx.push_back(*i);
  auto rep = diagonal_class_demo(g, numberings::discrete_equality_witness(g, {{0}, {1}}), idx, 4, 20000);
  t.expect(rep.verdict() == Verdict::Verified && rep.mismatches.empty() && rep.unsettled == 0 &&
               rep.pairs_checked == idx.size() * idx.size(),
           "diagonal demo");
  t.expect(rep.k_members == std::vector<FinSet>{{cantor(0, 0)}, {cantor(1, 1)}}, "diagonal K members");
  // Brute force of Ix(K) on the sampled pairs: pair(i, j) names c(γ(i) × γ(j)),
  // which lies in K iff γ(i) = γ(j).
  std::uint64_t in_k = 0;
  for (const auto& i : idx)
    for (const auto& j : idx) {
      auto a = g.below(i, 4, 20000), b = g.below(j, 4, 20000);
      t.expect(a && b, "gamma settles on sampled indices");
      if (a && b) in_k += *a == *b;
    }
  t.note(std::to_string(rep.pairs_checked) + " diagonal pairs, " + std::to_string(in_k) + " in Ix(K)");

  auto prog = projection_program();
  std::mt19937_64 rng(88);
  for (int i = 0; i < 50; ++i) {
    FinSet d;
    auto n = rng() % 6;
    for (std::uint64_t j = 0; j < n; ++j) d.insert(rng() % 60);
    FinSet want;
    for (std::uint64_t x = 0; x < 60; ++x)
      for (std::uint64_t y = 0; y < 60; ++y)
        if (d.contains(cantor(x, y))) {
          want.insert(x);
          want.insert(y);
        }
    auto r = kernel::run_steps(prog, dn_encode(d), 1000000);
    t.expect(projection(d) == want && r.halted() && dn_decode(*r.value) == want, "projection of " + str(d));
  }

  std::vector<FinSet> fam{{0}, {1}};
  auto a = numberings::effective_discreteness_check(fam, 2);
  bool ok = a.verdict == Verdict::Verified && a.supports.size() == fam.size();
  for (std::size_t i = 0; ok && i < fam.size(); ++i)
    for (std::size_t j = 0; j < fam.size(); ++j) {
      bool inside = std::includes(fam[j].begin(), fam[j].end(), a.supports[i].begin(), a.supports[i].end());
      ok = ok && inside == (i == j);
    }
  t.expect(ok, "discreteness witness for {{0},{1}}");
  t.expect(numberings::effective_discreteness_check({{}, {0}}, 8).verdict == Verdict::Refuted,
           "discreteness refuted for {{},{0}}");
}

// ------------------------------------------------------------ criterion 9

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_tool(const std::string& etw, const std::string& args) {
  auto cmd = "'" + etw + "' " + args + " > /dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

void determinism(Tally& t, const std::string& etw) {
  auto dir = std::filesystem::temp_directory_path() / ("etw_accept_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  auto file = [&](const std::string& n) { return (dir / n).string(); };

  const std::vector<std::string> commands{
      "verify space-from-tree fixture1", "verify rice-shapiro x_comb", "verify space scott_diamond",
      "demo branching-basic",            "demo diagonal-demo",          "demo non-open-trace",
      "enumerate sigma-t comb path_00",  "verify wn subsets01",
  };
  for (std::size_t i = 0; i < commands.size(); ++i) {
    auto a = file("a" + std::to_string(i) + ".json"), b = file("b" + std::to_string(i) + ".json");
    int ra = run_tool(etw, commands[i] + " --out " + a);
    int rb = run_tool(etw, commands[i] + " --out " + b);
    t.expect(ra == rb && ra >= 0 && ra <= 2, commands[i] + " exit status");
    t.expect(!slurp(a).empty() && slurp(a) == slurp(b), commands[i] + " report bytes");
  }

  const std::vector<std::pair<std::string, std::uint64_t>> jobs{
      {"enumerate we evens", 70}, {"enumerate sigma-t fixture1 path_00", 150}, {"enumerate alpha-c diamond top", 90}};
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const auto& [cmd, stages] = jobs[i];
    auto snap = file("job" + std::to_string(i) + ".snap");
    auto whole = file("whole" + std::to_string(i) + ".json"), resumed = file("resumed" + std::to_string(i) + ".json");
    run_tool(etw, cmd + " --stages " + std::to_string(stages / 3) + " --snapshot " + snap);
    t.expect(slurp(snap).rfind(std::string(cli::kSnapshotMagic), 0) == 0, cmd + " snapshot magic");
    run_tool(etw, cmd + " --stages " + std::to_string(stages) + " --resume " + snap + " --out " + resumed);
    run_tool(etw, cmd + " --stages " + std::to_string(stages) + " --out " + whole);
    t.expect(!slurp(whole).empty() && slurp(whole) == slurp(resumed), cmd + " resume equivalence");
  }
  std::filesystem::remove_all(dir);
}

// ------------------------------------------------------------------ driver

struct Criterion {
  int id;
  std::string name;
  double limit_s;
  std::function<void(Tally&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: etw_acceptance PATH_TO_ETW\n";
    return 2;
  }
  const std::string etw = argv[1];
  std::vector<Criterion> all{
      {1, "kernel algebra", 30, kernel_algebra},
      {2, "classical Rice-Shapiro", 5, classical_rs},
      {3, "sigma_T construction", 60, sigma_t_convergence},
      {4, "alpha_c construction", 30, alpha_c_domains},
      {5, "intersection identity", 30, intersection_identity},
      {6, "generalized Rice-Shapiro", 60, rice_shapiro_general},
      {7, "branching lemma", 30, branching_lemma},
      {8, "products and diagonal class", 30, section_five},
      {9, "determinism and snapshots", 30, [&](Tally& t) { determinism(t, etw); }},
  };
  std::vector<int> only;
  for (int i = 2; i < argc; ++i) only.push_back(std::atoi(argv[i]));
  int failed = 0;
  for (const auto& c : all) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    Tally t;
    auto start = std::chrono::steady_clock::now();
    try {
      c.run(t);
    } catch (const std::exception& e) {
      t.expect(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool pass = t.ok() && secs < c.limit_s;
    failed += !pass;
    std::printf("criterion %d %-28s %s  %.2fs (limit %.0fs)  %s\n", c.id, c.name.c_str(), pass ? "PASS" : "FAIL", secs,
                c.limit_s, t.summary().c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
