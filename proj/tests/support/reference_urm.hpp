#pragma once

// Independent reference interpreter for the four core instructions, written
// directly from the instruction semantics (no shared code with the kernel).

#include "etw/kernel/program.hpp"

#include <map>
#include <optional>

namespace etw::testing {

struct RefResult {
  std::optional<Nat> value;
  std::uint64_t steps = 0;
};

inline RefResult reference_run(const kernel::Program& p, const Nat& input, std::uint64_t budget) {
  std::map<Nat, Nat> regs;
  regs[1] = input;
  auto get = [&](const Nat& r) -> Nat {
    auto it = regs.find(r);
    return it == regs.end() ? Nat(0) : it->second;
  };
  std::size_t pc = 0;
  std::uint64_t steps = 0;
  while (pc < p.code.size()) {
    if (steps == budget) return {std::nullopt, steps};
    ++steps;
    const auto& ins = p.code[pc];
    switch (ins.op) {
      case kernel::Op::Zero: regs[ins.args[0]] = 0; ++pc; break;
      case kernel::Op::Succ: regs[ins.args[0]] = get(ins.args[0]) + 1; ++pc; break;
      case kernel::Op::Transfer: regs[ins.args[1]] = get(ins.args[0]); ++pc; break;
      case kernel::Op::Jump:
        if (get(ins.args[0]) == get(ins.args[1])) {
          Nat q = ins.args[2] - 1;
          pc = q >= p.code.size() ? p.code.size() : q.convert_to<std::size_t>();
        } else {
          ++pc;
        }
        break;
      default: throw std::logic_error("reference_run: core instructions only");
    }
  }
  return {get(1), steps};
}

}  // namespace etw::testing
