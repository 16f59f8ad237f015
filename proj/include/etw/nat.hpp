#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>

namespace etw {

/// Unbounded natural number. Registers, program indices and finite-set codes
/// all live here.
using Nat = boost::multiprecision::mpz_int;

/// A finite set of naturals small enough to enumerate element by element.
using FinSet = std::set<std::uint64_t>;

inline std::size_t limb_count(const Nat& n) {
  return mpz_size(n.backend().data());
}

inline bool fits_u64(const Nat& n) { return n.sign() >= 0 && boost::multiprecision::msb(n | 1) < 64; }

/// Value as u64, or nullopt when it does not fit.
inline std::optional<std::uint64_t> to_u64(const Nat& n) {
  if (!fits_u64(n)) return std::nullopt;
  return n.convert_to<std::uint64_t>();
}

/// Saturating conversion, used for step budgets read out of registers.
inline std::uint64_t saturate_u64(const Nat& n) {
  auto v = to_u64(n);
  return v ? *v : UINT64_MAX;
}

inline std::string to_string(const Nat& n) { return n.str(); }

inline Nat nat_from_string(const std::string& s) { return Nat(s); }

// Cantor pairing: pair(x, y) = (x+y)(x+y+1)/2 + y.
Nat pair(const Nat& x, const Nat& y);
std::pair<Nat, Nat> unpair(const Nat& n);
Nat unpair_left(const Nat& n);
Nat unpair_right(const Nat& n);

std::uint64_t pair(std::uint64_t x, std::uint64_t y);
std::pair<std::uint64_t, std::uint64_t> unpair(std::uint64_t n);

/// A second bijection N x N -> N whose output size is additive:
/// bits(compact_pair(x, y)) <= bits(x) + bits(y) + O(log). Pairs are ordered
/// by the total length of their bijective binary strings, then by the length
/// of the first string, then lexicographically. Used by the program coding so
/// that programs embedding large constants stay proportionally small.
Nat compact_pair(const Nat& x, const Nat& y);
std::pair<Nat, Nat> compact_unpair(const Nat& z);

/// D_n: the finite set of bit positions of n.
FinSet dn_decode(const Nat& n);
Nat dn_encode(const FinSet& f);
bool dn_contains(const Nat& n, std::uint64_t x);

/// Renders a finite set as "{a,b,c}".
std::string format_set(const FinSet& f);

}  // namespace etw
