#pragma once

#include "etw/kernel/program.hpp"

#include <functional>
#include <optional>
#include <set>

namespace etw::kernel {

struct StepBudget {
  std::uint64_t steps = 0;
};

/// Outcome of a bounded evaluation: either a value, or Exhausted (the budget
/// or the argument bound was hit). Exhausted is never encoded as a number.
struct EvalResult {
  std::optional<Nat> value;
  std::uint64_t steps_used = 0;
  /// Set when the machine reached a state that provably repeats forever
  /// (a self-jump outside any bounded evaluation). No budget can help.
  bool diverged = false;

  bool halted() const { return value.has_value(); }
  static EvalResult exhausted(std::uint64_t steps) { return {std::nullopt, steps, false}; }
};

/// phi_e^s(x): halts within s steps and x <= s, otherwise Exhausted.
EvalResult run(const ProgramIndex& e, const Nat& x, StepBudget s);

/// Step-bounded evaluation without the argument clause. This is what the E
/// instruction computes, and what dovetailing constructions use.
EvalResult run_steps(const ProgramIndex& e, const Nat& x, std::uint64_t steps);

/// W_e^s as a D-code.
Nat we_stage(const ProgramIndex& e, std::uint64_t s);
FinSet we_stage_set(const ProgramIndex& e, std::uint64_t s);

/// {phi_e(x) : x <= s, halting within s steps}.
std::set<Nat> image_stage(const ProgramIndex& e, std::uint64_t s);
/// D-code of image_stage; throws std::range_error if a value is too large to
/// be a bit position.
Nat image_stage_code(const ProgramIndex& e, std::uint64_t s);

// Builtins invoked by the N instruction. Every builtin is total; unknown ids
// return 0 at unit cost.
struct BuiltinResult {
  Nat value;
  std::uint64_t cost = 1;
};
using Builtin = std::function<BuiltinResult(const Nat& arg)>;

enum class BuiltinId : std::uint32_t {
  TreeSigmaStage = 1,    // arg = pair(tree_code, pair(n, s))
  DomainSigmaStage = 2,  // arg = pair(domain_code, pair(e, s))
};

/// Builtin lookup; defined alongside the module implementations.
const Builtin* find_builtin(std::uint64_t id);

/// Drops the per-thread decoded-program cache.
void clear_program_cache();

}  // namespace etw::kernel
