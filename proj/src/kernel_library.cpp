#include "etw/kernel/library.hpp"

#include "etw/kernel/assembler.hpp"

#include <iterator>

namespace etw::kernel::lib {

ProgramIndex identity() { return {0}; }

ProgramIndex loop() {
  Assembler a;
  auto top = a.label();
  a.bind(top);
  a.jump(top);
  return a.index();
}

ProgramIndex constant(const Nat& k) {
  Assembler a;
  a.load(1, k);
  return a.index();
}

ProgramIndex first() {
  Assembler a;
  a.left(1, 1);
  return a.index();
}

ProgramIndex second() {
  Assembler a;
  a.right(1, 1);
  return a.index();
}

ProgramIndex add_pair() {
  Assembler a;
  a.left(1, 2);
  a.right(1, 3);
  a.add(2, 3, 1);
  return a.index();
}

ProgramIndex finite_set(const FinSet& f) {
  // r4 is never written, so it stays 0.
  Assembler a;
  auto test = a.label();
  a.load(2, dn_encode(f));
  a.bit(2, 1, 3);
  a.bind(test);
  a.jump_if_equal(3, 4, test);
  return a.index();
}

std::uint64_t finite_set_halting_time(const FinSet& f) {
  auto limbs = limb_count(dn_encode(f));
  return (limbs > 1 ? limbs : 1) + 2;
}

ProgramIndex member_list(const FinSet& f) {
  Assembler a;
  auto self = a.label();
  for (auto x : f) {
    a.load(2, x);
    a.jump_if_equal(1, 2, a.halt());
  }
  a.bind(self);
  a.jump(self);
  return a.index();
}

std::optional<std::uint64_t> member_list_time(const FinSet& f, std::uint64_t x) {
  auto it = f.find(x);
  if (it == f.end()) return std::nullopt;
  return 2 * static_cast<std::uint64_t>(std::distance(f.begin(), it)) + 2;
}

ProgramIndex listing(const FinSet& f) {
  Assembler a;
  std::vector<Assembler::Label> hit;
  std::uint64_t i = 0;
  for (auto it = f.begin(); it != f.end(); ++it, ++i) {
    hit.push_back(a.label());
    a.load(2, i);
    a.jump_if_equal(1, 2, hit.back());
  }
  a.zero(1);
  a.jump(a.halt());
  i = 0;
  for (auto x : f) {
    a.bind(hit[i++]);
    a.load(1, pair(Nat(x), Nat(1)));
    a.jump(a.halt());
  }
  return a.index();
}

ProgramIndex constant_program_transformer() {
  Assembler a;
  a.load(2, first().code);
  a.smn(2, 1, 1);
  return a.index();
}

}  // namespace etw::kernel::lib
