#pragma once

#include "etw/kernel/program.hpp"

#include <optional>

// Stock programs used across the modules and the tests.
namespace etw::kernel::lib {

/// The empty program; halts at once with its input. Index 0.
ProgramIndex identity();
/// `J 1 1 1`: never halts.
ProgramIndex loop();
/// Outputs k on every input.
ProgramIndex constant(const Nat& k);
/// On pair(a, b) returns a / returns b.
ProgramIndex first();
ProgramIndex second();
/// On pair(a, b) returns a + b.
ProgramIndex add_pair();
/// Halts (returning its input) exactly on the members of f, after
/// finite_set_halting_time(f) steps; loops otherwise.
ProgramIndex finite_set(const FinSet& f);
std::uint64_t finite_set_halting_time(const FinSet& f);
/// Halts (returning its input) exactly on the members of f by comparing
/// against each member in increasing order; loops otherwise. Halting time
/// does not depend on the size of the members.
ProgramIndex member_list(const FinSet& f);
/// Steps member_list(f) takes on x; nullopt when x is not a member.
std::optional<std::uint64_t> member_list_time(const FinSet& f, std::uint64_t x);
/// Total listing of f: on i < |f| returns pair(k_i, 1) for the i-th member
/// k_i, and 0 (no element) otherwise.
ProgramIndex listing(const FinSet& f);
/// Transformer z -> index of a program outputting z on every input.
ProgramIndex constant_program_transformer();

}  // namespace etw::kernel::lib
