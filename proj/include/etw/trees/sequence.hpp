#pragma once

#include "etw/nat.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace etw::trees {

using FiniteSeq = std::vector<std::uint64_t>;

/// δ: () ↦ 0, (a1, ..., aL) ↦ the number written in binary as
/// 1 1^a1 0 1^a2 0 ... 0 1^aL. A bijection between N and finite sequences.
Nat delta_encode(const FiniteSeq& x);
FiniteSeq delta_decode(const Nat& n);
/// δ-code as a machine word, when it fits.
std::optional<std::uint64_t> delta_code(const FiniteSeq& x);

/// x ⊑ y: x is a prefix of y.
bool prefix_leq(const FiniteSeq& x, const FiniteSeq& y);
/// x ≼ y: x ⊑ y, or x is smaller at the first difference.
bool lex_leq(const FiniteSeq& x, const FiniteSeq& y);
/// x ≤_KB y: x ⊒ y, or x is smaller at the first difference.
bool kb_leq(const FiniteSeq& x, const FiniteSeq& y);

/// Written "(a b c)"; the empty sequence is "()".
std::string format_seq(const FiniteSeq& x);

/// All prefixes of x, shortest first (x itself last).
std::vector<FiniteSeq> prefixes(const FiniteSeq& x);

}  // namespace etw::trees
