#include "doctest.h"

#include "etw/kernel/assembler.hpp"
#include "etw/kernel/library.hpp"
#include "etw/kernel/machine.hpp"
#include "etw/kernel/smn.hpp"
#include "support/random_programs.hpp"
#include "support/reference_urm.hpp"

#include <bit>
#include <random>

using namespace etw;
using namespace etw::kernel;

TEST_CASE("program coding round-trips exhaustively up to 10^4") {
  for (unsigned n = 0; n <= 10000; ++n) {
    auto p = decode_program({Nat(n)});
    REQUIRE(encode_program(p).code == n);
  }
}

TEST_CASE("decode-encode identity on random programs") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    auto p = testing::random_extended_program(rng, 12);
    CHECK(decode_program(encode_program(p)) == p);
  }
}

TEST_CASE("index 0 is the empty program and halts at once") {
  CHECK(decode_program({0}).code.empty());
  auto r = run({0}, 7, {7});
  REQUIRE(r.halted());
  CHECK(*r.value == 7);
  CHECK(r.steps_used == 0);
}

TEST_CASE("run: identity, argument clause, non-halting") {
  auto id = lib::identity();
  auto r = run(id, 3, {10000});
  REQUIRE(r.halted());
  CHECK(*r.value == 3);
  // x > s is Exhausted whatever the program.
  CHECK_FALSE(run(id, 11, {10}).halted());
  for (std::uint64_t s : {0u, 1u, 5u, 1000u, 100000u}) CHECK_FALSE(run(lib::loop(), 0, {s}).halted());
  CHECK(decode_program(lib::loop()).code.size() == 1);
}

TEST_CASE("machine agrees with the reference interpreter on core programs") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> x_d(0, 6);
  std::uniform_int_distribution<std::uint64_t> s_d(0, 300);
  for (int i = 0; i < 2000; ++i) {
    auto p = testing::random_core_program(rng);
    auto e = encode_program(p);
    Nat x = x_d(rng);
    auto s = s_d(rng) + 6;
    auto got = run_steps(e, x, s);
    auto want = testing::reference_run(p, x, s);
    REQUIRE(got.halted() == want.value.has_value());
    if (got.halted()) {
      CHECK(*got.value == *want.value);
      CHECK(got.steps_used == want.steps);
    }
  }
}

TEST_CASE("determinism and budget monotonicity") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    auto e = encode_program(testing::random_extended_program(rng));
    Nat x = rng() % 5;
    auto a = run(e, x, {200});
    auto b = run(e, x, {200});
    CHECK(a.halted() == b.halted());
    CHECK(a.steps_used == b.steps_used);
    if (a.halted()) {
      CHECK(*a.value == *b.value);
      for (std::uint64_t s : {201u, 500u, 5000u}) {
        auto c = run(e, x, {s});
        REQUIRE(c.halted());
        CHECK(*c.value == *a.value);
      }
    }
  }
}

TEST_CASE("we_stage") {
  CHECK(we_stage(lib::loop(), 50) == 0);
  // The identity halts in zero steps, so W^s is everything up to s.
  auto w = we_stage_set(lib::identity(), 1000);
  CHECK(w.size() == 1001);
  CHECK(*w.rbegin() == 1000);

  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    auto e = encode_program(testing::random_core_program(rng));
    std::uint64_t s = rng() % 60;
    auto a = we_stage_set(e, s), b = we_stage_set(e, s + 1);
    CHECK(std::includes(b.begin(), b.end(), a.begin(), a.end()));
  }
}

TEST_CASE("image_stage") {
  CHECK(image_stage(lib::loop(), 40).empty());
  CHECK(image_stage_code(lib::constant(5), 10) == 32);
  std::mt19937_64 rng(9);
  for (int i = 0; i < 100; ++i) {
    auto e = encode_program(testing::random_core_program(rng));
    std::uint64_t s = rng() % 60;
    auto a = image_stage(e, s), b = image_stage(e, s + 1);
    CHECK(std::includes(b.begin(), b.end(), a.begin(), a.end()));
  }
}

TEST_CASE("Cantor pairing") {
  CHECK(pair(Nat(0), Nat(0)) == 0);
  CHECK(pair(Nat(1), Nat(2)) == 8);
  CHECK(unpair(Nat(8)) == std::pair<Nat, Nat>{1, 2});
  for (unsigned n = 0; n <= 10000; ++n) {
    auto [x, y] = unpair(Nat(n));
    REQUIRE(pair(x, y) == n);
  }
  // Closed form on u64 agrees with the big-number path.
  CHECK(pair(std::uint64_t{123456}, std::uint64_t{789}) == pair(Nat(123456), Nat(789)));
}

TEST_CASE("compact pairing") {
  // Brute-force oracle: list pairs by total string length, then first length, then lexicographically.
  std::vector<std::pair<unsigned, unsigned>> order;
  auto len = [](unsigned v) { return static_cast<unsigned>(std::bit_width(v + 1) - 1); };
  for (unsigned m = 0; m <= 9; ++m)
    for (unsigned lu = 0; lu <= m; ++lu)
      for (unsigned x = (1u << lu) - 1; x < (2u << lu) - 1; ++x)
        for (unsigned y = (1u << (m - lu)) - 1; y < (2u << (m - lu)) - 1; ++y) order.emplace_back(x, y);
  for (std::size_t z = 0; z < order.size(); ++z) {
    auto [x, y] = order[z];
    REQUIRE(len(x) + len(y) <= 9);
    REQUIRE(compact_pair(Nat(x), Nat(y)) == z);
    REQUIRE(compact_unpair(Nat(z)) == std::pair<Nat, Nat>{x, y});
  }
  std::mt19937_64 rng(13);
  for (int i = 0; i < 200; ++i) {
    Nat x = Nat(rng()) << (rng() % 3000), y = Nat(rng()) << (rng() % 3000);
    auto z = compact_pair(x, y);
    CHECK(compact_unpair(z) == std::pair<Nat, Nat>{x, y});
    CHECK(boost::multiprecision::msb(z + 1) <= boost::multiprecision::msb(x + 1) + boost::multiprecision::msb(y + 1) + 16);
  }
}

TEST_CASE("finite-set codes") {
  CHECK(dn_decode(0).empty());
  CHECK(dn_decode(5) == FinSet{0, 2});
  CHECK(dn_encode({1}) == 2);
  for (unsigned n = 0; n <= 10000; ++n) REQUIRE(dn_encode(dn_decode(n)) == n);
}

TEST_CASE("finite-set programs halt exactly on their members") {
  FinSet f{0, 3, 70};
  auto e = lib::finite_set(f);
  auto t = lib::finite_set_halting_time(f);
  for (std::uint64_t x = 0; x < 80; ++x) {
    auto r = run_steps(e, x, 1000);
    CHECK(r.halted() == f.contains(x));
    if (r.halted()) CHECK(r.steps_used == t);
  }
}

TEST_CASE("smn") {
  auto proj2 = lib::second();
  auto e = smn(proj2, 9);
  for (unsigned x = 0; x <= 50; ++x) {
    auto r = run(e, x, {100000});
    REQUIRE(r.halted());
    CHECK(*r.value == x);
  }
  auto r = run(smn(lib::add_pair(), 2), 3, {100000});
  REQUIRE(r.halted());
  CHECK(*r.value == 5);

  std::set<Nat> codes;
  for (unsigned y = 0; y <= 100; ++y) codes.insert(smn(proj2, y).code);
  CHECK(codes.size() == 101);
}

TEST_CASE("smn equation on random programs") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 200; ++i) {
    auto e = encode_program(testing::random_extended_program(rng));
    Nat y = rng() % 20, x = rng() % 20;
    auto lhs = run_steps(smn(e, y), x, 100000);
    auto rhs = run_steps(e, pair(y, x), 100000);
    if (lhs.halted() || rhs.halted()) {
      REQUIRE(lhs.halted());
      REQUIRE(rhs.halted());
      CHECK(*lhs.value == *rhs.value);
    }
  }
}

TEST_CASE("recursion theorem") {
  SUBCASE("identity transformer") {
    auto e = fixpoint(lib::identity());
    // phi_f(e) = e, so the fixpoint equation is phi_e = phi_e; it must not halt spuriously.
    CHECK_FALSE(run_steps(e, 0, 10000).halted());
  }
  SUBCASE("constant transformer") {
    auto e = fixpoint(lib::constant(lib::constant(5).code));
    for (unsigned x = 0; x <= 10; ++x) {
      auto r = run_steps(e, x, 100000);
      REQUIRE(r.halted());
      CHECK(*r.value == 5);
    }
  }
  SUBCASE("self-printing") {
    auto e = fixpoint(lib::constant_program_transformer());
    for (unsigned x = 0; x <= 10; ++x) {
      auto r = run_steps(e, x, 100000);
      REQUIRE(r.halted());
      CHECK(*r.value == e.code);
    }
  }
}

TEST_CASE("bounded evaluation inside a program") {
  // On x: r2 := E(loop-or-identity, x, 5). Identity returns x+1, loop returns 0.
  Assembler a;
  a.load(2, lib::identity().code);
  a.load(3, 5);
  a.eval(2, 1, 3, 4);
  a.load(2, lib::loop().code);
  a.eval(2, 1, 3, 5);
  a.pair(4, 5, 1);
  auto e = a.index();
  auto r = run_steps(e, 7, 1000);
  REQUIRE(r.halted());
  CHECK(*r.value == pair(Nat(8), Nat(0)));
  // The inner loop consumes exactly its 5 steps.
  CHECK(r.steps_used == 6 + 5);
  // When the outer budget cannot cover the inner one, the whole run is exhausted.
  CHECK_FALSE(run_steps(e, 7, 8).halted());
}

TEST_CASE("program text format") {
  auto p = parse_program("# add one\n s 1\nJ 1 1 3  # done\n\nz 2\n");
  REQUIRE(p.code.size() == 3);
  CHECK(p.code[0].op == Op::Succ);
  CHECK(p.code[1].args[2] == 3);
  CHECK(parse_program(format_program(p)) == p);
  CHECK_THROWS_AS(parse_program("S 1\nQ 2\n"), ParseError);
  try {
    parse_program("S 1\nS 0\n");
    FAIL("expected ParseError");
  } catch (const ParseError& err) {
    CHECK(err.line() == 2);
  }
  CHECK_THROWS_AS(parse_program("J 1 2\n"), ParseError);
}
