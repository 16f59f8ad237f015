#pragma once

#include "etw/numberings/wn_family.hpp"

#include <utility>

namespace etw::numberings {

/// Enumerator of Ix(K) = {n : point n lies in the open set K}.
///
/// `profile` maps a point index n to a total listing program of the point's
/// basic-open profile A_n: on i it returns pair(k, 1) when k is the i-th
/// listed member and 0 for "nothing at i". `basis_set` is a c.e. set V of
/// basis indices with K = ∪_{k∈V} α(k). The result halts on n exactly when
/// A_n meets V, found by dovetailing list positions against stages of V.
CeSet index_set_enumerator(const ProgramIndex& profile, const ProgramIndex& basis_set);

struct PositivityReport {
  Verdict verdict = Verdict::Unknown;
  bool sound = true;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> false_pair;  // accepted but unequal
  std::vector<std::pair<std::uint64_t, std::uint64_t>> missed;         // equal but not accepted
  std::uint64_t undetermined = 0;  // grid cells whose gamma value was not settled
};

/// Checks an equality semi-decider `eq` (halting on pair(n, m)) against the
/// explicit members of gamma on the grid [0, grid)². Refuted when it accepts
/// an unequal pair; Verified when additionally every equal pair is accepted.
PositivityReport positivity_check(const PrincipalNumbering& g, const ProgramIndex& eq, std::uint64_t grid,
                                  std::uint64_t bound, std::uint64_t budget);

/// Sound equality witness for the subsets-of-f family: accepts pair(n, m)
/// when n == m, or when both gamma(n) and gamma(m) contain all of f.
ProgramIndex subsets_equality_witness(const PrincipalNumbering& g, const FinSet& f);

/// Equality witness for a family with separating supports: accepts
/// pair(n, m) when n == m or some F_i lies in both gamma(n) and gamma(m).
ProgramIndex discrete_equality_witness(const PrincipalNumbering& g, const std::vector<FinSet>& supports);

struct DiscretenessReport {
  Verdict verdict = Verdict::Unknown;
  std::vector<FinSet> supports;        // F_i for member i when found
  std::optional<std::size_t> blocked;  // member without a separating support
  bool absolute = false;               // refutation does not depend on the bound
  std::optional<ProgramIndex> sequence;  // h with D_{h(i)} = F_min(i, last)
};

/// Searches, for every member A, a finite F ⊆ A with elements <= bound such
/// that A is the only member containing F.
DiscretenessReport effective_discreteness_check(const std::vector<FinSet>& family, std::uint64_t bound);

struct OpenFormReport {
  bool open = false;
  std::vector<FinSet> generators;  // minimal members of K
  std::optional<std::pair<std::size_t, std::size_t>> counterexample;  // A ∈ K, A ⊆ B, B ∉ K
};

/// Decides whether K (a predicate on the explicit family) has the form
/// {E : E ⊇ F for some generator F}, returning generators or a monotonicity
/// counterexample.
OpenFormReport classical_rice_shapiro_oracle(const std::vector<FinSet>& family, const std::vector<bool>& k);

}  // namespace etw::numberings
