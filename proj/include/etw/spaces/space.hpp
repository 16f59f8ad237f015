#pragma once

#include "etw/check.hpp"
#include "etw/kernel/program.hpp"
#include "etw/numberings/ceset.hpp"

#include <boost/dynamic_bitset.hpp>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace etw::spaces {

using kernel::ProgramIndex;
using PointSet = boost::dynamic_bitset<>;

/// An effectively enumerable T₀-space on a finite point list. The basis
/// numbering α is a native function of the basis index; only the indices in
/// `basis` have α(n) ≠ ∅. The intersection function g satisfies
/// α(i) ∩ α(j) = ⋃_n α(g(i, j, n)), with the union reached by n < g_span.
struct Space {
  std::string name;
  std::vector<std::string> points;
  std::function<PointSet(std::uint64_t)> alpha;
  std::vector<std::uint64_t> basis;  // sorted, α ≠ ∅ exactly here
  std::uint64_t empty_index = 0;     // some n with α(n) = ∅
  std::function<std::uint64_t(std::uint64_t, std::uint64_t, std::uint64_t)> g;
  std::uint64_t g_span = 1;

  std::size_t size() const { return points.size(); }
  PointSet none() const { return PointSet(points.size()); }
  PointSet all() const { return ~none(); }
  /// A_x = {n : x ∈ α(n)}.
  FinSet profile(std::size_t x) const;
  /// Program semi-deciding {n : α(n) ≠ ∅}.
  ProgramIndex nonempty_indices() const;
  /// Indices used by exhaustive checks: the basis plus the empty index.
  std::vector<std::uint64_t> check_indices() const;
};

/// Points of a set, for reports.
Json point_names(const Space& x, const PointSet& s);

/// b_n ≤ 𝒪_n and α(m) = ⋃_{b_i ∈ α(m)} 𝒪_i. On the explicit tier the
/// sequences are finite lists; entry n >= size repeats the last entry.
/// 𝒪_n is given by a finite set of basis indices.
struct ModularWitness {
  std::vector<std::size_t> b;
  std::vector<FinSet> o;
};

/// Both clauses of the definition over check_indices(), the T₀ condition,
/// and coverage (reported in the witness, not failed).
CheckResult ee_space_check(const Space& x);

/// ⋃_{n ∈ V} α(n) for a finite V.
PointSet eff_open_denotation(const Space& x, const FinSet& v);
/// ⋃_{n ∈ W_e} α(n), reading W_e below the largest basis index at `budget`.
PointSet eff_open_denotation(const Space& x, const numberings::CeSet& v, std::uint64_t budget);

/// α^e(n) = ⋃_{k ∈ W_n} α(k).
class PrincipalOpenNumbering {
 public:
  explicit PrincipalOpenNumbering(const Space& x) : x_(&x) {}
  PointSet operator()(const Nat& n, std::uint64_t budget) const;

 private:
  const Space* x_;
};

/// x ≤ y in the specialisation order: A_x ⊆ A_y.
bool specialization_leq(const Space& x, std::size_t a, std::size_t b);

/// 𝒪_n as a point set.
PointSet witness_open(const Space& x, const ModularWitness& w, std::size_t n);

/// Req 2 clauses (a) and (b), exhaustively.
CheckResult modular_check(const Space& x, const ModularWitness& w);

/// ⋂_{i ∈ V} α(i) = ⋃ {𝒪_j : b_j ∈ ⋂_{i ∈ V} α(i)}; V = ∅ gives the whole space.
CheckResult intersection_identity_check(const Space& x, const ModularWitness& w, const FinSet& v);

/// The point-table numbering γ̄(n) = points[min(n, k-1)] of the computable
/// points, as a selector of listing programs for A_{γ̄(n)}.
ProgramIndex profile_selector(const Space& x);
inline std::size_t point_table(const Space& x, std::uint64_t n) {
  return static_cast<std::size_t>(std::min<std::uint64_t>(n, x.size() - 1));
}

}  // namespace etw::spaces
