#include "doctest.h"

#include "etw/domains/domain.hpp"
#include "etw/kernel/library.hpp"
#include "etw/kernel/machine.hpp"
#include "etw/riceshapiro/riceshapiro.hpp"
#include "etw/spaces/constructions.hpp"

#include <random>

using namespace etw;
using namespace etw::riceshapiro;
using trees::FiniteSeq;

namespace {

PointSet points_of(const spaces::TreeSpace& ts, std::initializer_list<FiniteSeq> vs) {
  PointSet s(ts.space.size());
  for (const auto& v : vs) s.set(std::find(ts.vertices.begin(), ts.vertices.end(), v) - ts.vertices.begin());
  return s;
}

std::size_t point_of(const spaces::TreeSpace& ts, const FiniteSeq& v) {
  return std::find(ts.vertices.begin(), ts.vertices.end(), v) - ts.vertices.begin();
}

const trees::Tree& fixture_tree() {
  static const auto t = trees::Tree::explicit_tree({{}, {0}, {1}, {0, 0}});
  return t;
}

bool upward_closed_oracle(const spaces::TreeSpace& ts, const PointSet& k) {
  for (std::size_t a = 0; a < ts.vertices.size(); ++a)
    for (std::size_t b = 0; b < ts.vertices.size(); ++b)
      if (k.test(a) && !k.test(b) && trees::prefix_leq(ts.vertices[a], ts.vertices[b])) return false;
  return true;
}

}  // namespace

TEST_CASE("branching fixtures") {
  auto fx = branching_fixtures();
  REQUIRE(fx.size() == 3);
  CHECK(fx[0].w != fx[2].w);
  std::vector<FinSet> expect{{0, 1}, {}, {0, 1}};
  for (std::size_t i = 0; i < fx.size(); ++i) {
    auto r = branching(fx[i], 1000000, 10);
    INFO(fx[i].name);
    CHECK(r.verdict == Verdict::Verified);
    CHECK(r.we == expect[i]);
    CHECK(r.we == r.rhs);
    REQUIRE(r.e);
    // e ∈ W, seen exactly at stage p.
    CHECK(kernel::run_steps(fx[i].w, *r.e, *r.p).halted());
    if (*r.p > 0) CHECK_FALSE(kernel::run_steps(fx[i].w, *r.e, *r.p - 1).halted());
  }
  CHECK(branching(fx[0], 1000000, 10).e != branching(fx[2], 1000000, 10).e);
  // W that never accepts anything: e cannot be placed, so the answer is Unknown.
  BranchingInstance never{"never", kernel::lib::loop(), kernel::lib::constant(1), kernel::lib::constant(0)};
  CHECK(branching(never, 5000, 3).verdict == Verdict::Unknown);
}

TEST_CASE("monotone_check") {
  std::vector<FinSet> fam{{}, {0}, {1}, {0, 1}};
  CHECK(monotone_check(fam, {false, true, false, true}).verdict == Verdict::Verified);
  CHECK(monotone_check(fam, {true, true, true, true}).verdict == Verdict::Verified);
  auto r = monotone_check(fam, {true, false, false, false});
  CHECK(r.verdict == Verdict::Refuted);
  CHECK(r.witness["A"] == Json::array());
  CHECK(r.witness["B"] == Json::array({0}));
}

TEST_CASE("upward closure and rs_forward on X_T") {
  auto ts = spaces::build_X_T(fixture_tree());
  const auto& x = ts.space;
  CHECK(upward_closure_check(x, x.all()).verdict == Verdict::Verified);
  auto single = points_of(ts, {{0}});
  auto u = upward_closure_check(x, single);
  CHECK(u.verdict == Verdict::Refuted);
  CHECK(u.witness["a"] == "(0)");
  CHECK(u.witness["b"] == "(0 0)");
  CHECK(upward_closure_check(x, x.alpha(*trees::delta_code({0}))).verdict == Verdict::Verified);

  auto a0 = points_of(ts, {{0}, {0, 0}});
  auto rep = rs_forward(x, ts.witness, a0);
  CHECK(rep.verdict == Verdict::Verified);
  CHECK(rep.witness_indices == FinSet{point_of(ts, {0}), point_of(ts, {0, 0})});
  CHECK(spaces::eff_open_denotation(x, rep.basis_indices) == a0);

  auto bad = rs_forward(x, ts.witness, single);
  CHECK(bad.verdict == Verdict::Refuted);
  CHECK(bad.violation == std::pair{point_of(ts, {0}), point_of(ts, {0, 0})});

  auto none = rs_forward(x, ts.witness, x.none());
  CHECK(none.verdict == Verdict::Verified);
  CHECK(none.witness_indices.empty());
}

TEST_CASE("rs_forward, upward closure and Ix(K) agree on small trees") {
  for (const auto& t : trees::enumerate_trees(4, 2)) {
    auto ts = spaces::build_X_T(t);
    const auto& x = ts.space;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << x.size()); ++mask) {
      PointSet k(x.size(), mask);
      bool up = upward_closed_oracle(ts, k);
      REQUIRE((rs_forward(x, ts.witness, k).verdict == Verdict::Verified) == up);
      REQUIRE((upward_closure_check(x, k).verdict == Verdict::Verified) == up);
      REQUIRE((index_set_consistency(x, ts.witness, k, 20000).verdict == Verdict::Verified) == up);
    }
  }
}

TEST_CASE("monotone_check and upward_closure_check agree through profiles") {
  for (const auto& t : trees::enumerate_trees(4, 3)) {
    auto ts = spaces::build_X_T(t);
    const auto& x = ts.space;
    std::vector<FinSet> profiles;
    for (std::size_t p = 0; p < x.size(); ++p) profiles.push_back(x.profile(p));
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << x.size()); ++mask) {
      std::vector<bool> kf;
      for (std::size_t p = 0; p < x.size(); ++p) kf.push_back(mask >> p & 1);
      REQUIRE(monotone_check(profiles, kf).verdict == upward_closure_check(x, PointSet(x.size(), mask)).verdict);
    }
  }
}

TEST_CASE("non_open_witness") {
  auto ts = spaces::build_X_T(fixture_tree());
  const auto& x = ts.space;
  auto k = points_of(ts, {{0}});
  auto a = point_of(ts, {0});
  auto tr = non_open_witness(x, ts.witness, k, a);
  CHECK(tr.precondition);
  CHECK(tr.records.size() == x.profile(a).size() + 1);
  for (const auto& r : tr.records) CHECK_FALSE(k.test(spaces::point_table(x, r.h)));
  CHECK(spaces::point_table(x, tr.records.back().h) == point_of(ts, {0, 0}));
  CHECK(non_open_trace_check(x, ts.witness, k, a, tr).verdict == Verdict::Verified);

  // Tampering with a record is caught.
  auto broken = tr;
  broken.records.back().h = a;
  CHECK(non_open_trace_check(x, ts.witness, k, a, broken).verdict == Verdict::Refuted);

  auto open = points_of(ts, {{0}, {0, 0}});
  auto pre = non_open_witness(x, ts.witness, open, a);
  CHECK_FALSE(pre.precondition);
  REQUIRE(pre.separating);
  CHECK(spaces::witness_open(x, ts.witness, *pre.separating).is_subset_of(open));
  CHECK_THROWS_AS(non_open_witness(x, ts.witness, open, point_of(ts, {1})), std::invalid_argument);
}

TEST_CASE("rs_forward on a Scott space") {
  auto d = domains::Domain::explicit_domain({"bot", "a", "b", "top"}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  auto ds = domains::domain_to_modular(d);
  PointSet up_a(4, 0b1010);
  CHECK(rs_forward(ds.space, ds.witness, up_a).verdict == Verdict::Verified);
  CHECK(rs_forward(ds.space, ds.witness, ds.space.all()).verdict == Verdict::Verified);
  auto only_a = rs_forward(ds.space, ds.witness, PointSet(4, 0b0010));
  CHECK(only_a.verdict == Verdict::Refuted);
  CHECK(only_a.violation == std::pair<std::size_t, std::size_t>{1, 3});
}

TEST_CASE("product family") {
  auto base = numberings::singleton_family({3});
  auto one = product_family(base);
  REQUIRE(one.star.members);
  CHECK(*one.star.members == std::vector<FinSet>{{pair(3ull, 3ull)}});

  auto zero = product_family(numberings::subsets_family({0}));
  CHECK(*zero.star.members == std::vector<FinSet>{{}, {0}});

  auto pf = product_family(numberings::subsets_family({0, 1}));
  // Oracle: direct product enumeration.
  std::set<FinSet> expect;
  for (std::uint64_t a = 0; a < 4; ++a)
    for (std::uint64_t b = 0; b < 4; ++b) {
      FinSet s;
      for (std::uint64_t x = 0; x < 2; ++x)
        for (std::uint64_t y = 0; y < 2; ++y)
          if ((a >> x & 1) && (b >> y & 1)) s.insert((x + y) * (x + y + 1) / 2 + y);
      expect.insert(s);
    }
  CHECK(std::set<FinSet>(pf.star.members->begin(), pf.star.members->end()) == expect);
  CHECK(expect.size() == 10);

  // The projections read off W_{a(n)} and W_{b(n)}.
  auto n = numberings::CeSet::finite({pair(0ull, 1ull), pair(2ull, 1ull)}).index();
  auto an = kernel::run_steps(pf.a, n.code, 1000);
  auto bn = kernel::run_steps(pf.b, n.code, 1000);
  REQUIRE(an.halted());
  REQUIRE(bn.halted());
  CHECK(numberings::CeSet(ProgramIndex{*an.value}).below(3, 20000) == FinSet{0, 2});
  CHECK(numberings::CeSet(ProgramIndex{*bn.value}).below(3, 20000) == FinSet{1});
}

TEST_CASE("product family is a wn-family on small members") {
  auto pf = product_family(numberings::subsets_family({0}));
  std::vector<numberings::CeSet> cands;
  for (const auto& m : *pf.star.members) cands.push_back(numberings::CeSet::finite(m));
  cands.push_back(numberings::CeSet::finite({0, 7}));
  auto recs = numberings::wn_check(pf.star, cands, 100000, 8);
  for (std::size_t i = 0; i + 1 < recs.size(); ++i) {
    CHECK(recs[i].verdict == Verdict::Verified);
    CHECK(recs[i].member == i);
  }
  // {0, 7} projects to {0, 2} and {0, 1}; both meet {0} in {0}.
  CHECK(recs.back().member == 1u);
}

TEST_CASE("projection") {
  CHECK(projection({pair(0ull, 1ull)}) == FinSet{0, 1});
  auto prog = projection_program();
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    FinSet d;
    auto n = rng() % 5;
    for (std::uint64_t j = 0; j < n; ++j) d.insert(rng() % 40);
    // Oracle: search all (x, y) with x, y < 40 whose pair lands in D.
    FinSet want;
    for (std::uint64_t x = 0; x < 40; ++x)
      for (std::uint64_t y = 0; y < 40; ++y)
        if (d.contains((x + y) * (x + y + 1) / 2 + y)) {
          want.insert(x);
          want.insert(y);
        }
    CHECK(projection(d) == want);
    auto r = kernel::run_steps(prog, dn_encode(d), 100000);
    REQUIRE(r.halted());
    CHECK(dn_decode(*r.value) == want);
  }
}

TEST_CASE("diagonal class demo") {
  std::vector<FinSet> s{{0}, {1}};
  auto fam = numberings::discrete_family(s, {{0}, {1}});
  numberings::PrincipalNumbering g(fam);
  auto surj = numberings::surjectivity_check(g, 40, 4, 20000);
  REQUIRE(surj.verdict == Verdict::Verified);
  std::vector<Nat> idx{0, 1, 2};
  for (const auto& i : surj.index) idx.push_back(*i);
  auto eq = numberings::discrete_equality_witness(g, {{0}, {1}});
  auto rep = diagonal_class_demo(g, eq, idx, 4, 20000);
  CHECK(rep.verdict() == Verdict::Verified);
  CHECK(rep.pairs_checked == idx.size() * idx.size());
  CHECK(rep.k_members == std::vector<FinSet>{{0}, {4}});
  CHECK(rep.discreteness.verdict == Verdict::Verified);
  CHECK(rep.k_open);
  CHECK_FALSE(rep.rice_shapiro_fails);

  // A wrong equality witness (accepts everything) is caught.
  auto bad = diagonal_class_demo(g, kernel::lib::identity(), idx, 4, 20000);
  CHECK(bad.verdict() == Verdict::Refuted);
}
