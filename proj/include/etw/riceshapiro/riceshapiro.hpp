#pragma once

#include "etw/check.hpp"
#include "etw/numberings/index_sets.hpp"
#include "etw/numberings/wn_family.hpp"
#include "etw/spaces/space.hpp"

#include <optional>
#include <string>
#include <vector>

namespace etw::riceshapiro {

using kernel::ProgramIndex;
using spaces::PointSet;

// ---------------------------------------------------------------- branching

/// W is an index superset of V; V is presented by a total program
/// p -> D-code of V_p; r is total.
struct BranchingInstance {
  std::string name;
  ProgramIndex w;
  ProgramIndex v_stages;
  ProgramIndex r;
};

struct BranchingResult {
  Verdict verdict = Verdict::Unknown;
  std::optional<Nat> e;
  std::optional<std::uint64_t> p;
  FinSet we;   // W_e below the bound
  FinSet rhs;  // (V_p ∪ W_{r(p)}) below the bound
  std::uint64_t bound = 0;
  std::uint64_t budget = 0;

  Json to_json() const;
};

/// The self-referential program of the Branching lemma, as a fixpoint of the
/// transformer z -> smn(template, z). On x, program e runs stages s = 0, 1,
/// ...: while e is not seen in W within s steps it halts if x ∈ V_s; at the
/// first s = p where e is seen, it halts iff x ∈ V_p ∪ W_{r(p)}.
ProgramIndex branching_program(const BranchingInstance& inst);

/// Builds e, finds p as the number of steps W needs on e, and compares W_e
/// with V_p ∪ W_{r(p)} on x <= bound. Unknown when W does not accept e
/// within the budget or a side is not settled.
BranchingResult branching(const BranchingInstance& inst, std::uint64_t budget, std::uint64_t bound);

/// V = {0} with W = {n : 0 ∈ W_n} and W_{r(p)} = {0, 1}; V = ∅ with W = ω
/// and W_{r(p)} = ∅; the first again with a different index for W.
std::vector<BranchingInstance> branching_fixtures();

// ------------------------------------------------------- monotonicity / openness

/// A ⊆ B, A ∈ K̂, B in the family ⟹ B ∈ K̂. Refuted with the first violating
/// pair.
CheckResult monotone_check(const std::vector<FinSet>& family, const std::vector<bool>& k);

/// a ∈ K and a ≤ b ⟹ b ∈ K, for the specialisation order.
CheckResult upward_closure_check(const spaces::Space& x, const PointSet& k);

struct RsForwardReport {
  Verdict verdict = Verdict::Unknown;  // Verified: representation found
  FinSet witness_indices;              // {n : b_n ∈ K}
  FinSet basis_indices;                // union of 𝒪_n over witness_indices
  std::optional<std::pair<std::size_t, std::size_t>> violation;  // a ∈ K, a ≤ b, b ∉ K

  Json to_json(const spaces::Space& x) const;
};

/// On a finite explicit space, open means upward closed in the
/// specialisation order. When K is, returns {n : b_n ∈ K} and checks
/// K = ⋃_{b_n ∈ K} 𝒪_n exactly; otherwise refutes with a ≤ b, a ∈ K, b ∉ K.
RsForwardReport rs_forward(const spaces::Space& x, const spaces::ModularWitness& w, const PointSet& k);

/// Runs the index-set enumerator built from the profile selector and the
/// basis indices ⋃_{b_n ∈ K} 𝒪_n on every point-table index and compares
/// its halting set with Ix(K). The enumerator diverges off its set, so a
/// run that does not halt within `budget` counts as "not listed".
CheckResult index_set_consistency(const spaces::Space& x, const spaces::ModularWitness& w, const PointSet& k,
                                  std::uint64_t budget);

struct NonOpenRecord {
  std::uint64_t m = 0;
  FinSet v_m;                    // first m elements of A_a
  FinSet u_m;                    // point-table indices k < |X| with γ̄(k) ∈ ⋂_{i ∈ V_m} α(i)
  std::size_t n = 0;             // n(m)
  std::uint64_t h = 0;           // h(m)
  bool h_is_b = true;            // γ̄(h(m)) = b_{n(m)}; otherwise a point of 𝒪_{n(m)} ∖ K
};

struct NonOpenTrace {
  bool precondition = false;
  std::optional<std::size_t> separating;  // some 𝒪_n with a ∈ 𝒪_n ⊆ K when K is open at a
  std::vector<NonOpenRecord> records;

  Json to_json(const spaces::Space& x) const;
};

/// The machinery behind "Ix(K) c.e. implies K open", made inspectable. The
/// presentation of A_a lists it in increasing order; for m = 0..|A_a|, n(m)
/// is the least n with a ∈ 𝒪_n and b_n ∈ ⋂_{i ∈ V_m} α(i), and h(m) is the
/// point-table index of b_{n(m)} when b_{n(m)} ∉ K, else of the least point
/// of 𝒪_{n(m)} ∖ K. Throws std::invalid_argument when a ∉ K.
NonOpenTrace non_open_witness(const spaces::Space& x, const spaces::ModularWitness& w, const PointSet& k,
                              std::size_t a);

/// Re-checks every record: a ∈ 𝒪_{n(m)}, b_{n(m)} ∈ ⋂_{V_m} α(i),
/// h(m) ∈ U_m and γ̄(h(m)) ∉ K.
CheckResult non_open_trace_check(const spaces::Space& x, const spaces::ModularWitness& w, const PointSet& k,
                                 std::size_t a, const NonOpenTrace& t);

// ---------------------------------------------------------- counterexamples

/// S* = {c(A × B) : A, B ∈ S} with Cantor pairing c.
struct ProductFamily {
  numberings::WnFamily base;
  ProgramIndex a;           // n -> index of {x : ∃y pair(x, y) ∈ W_n}
  ProgramIndex b;           // n -> index of {y : ∃x pair(x, y) ∈ W_n}
  ProgramIndex sigma_star;  // W_{σ*(n)} = c(W_{σ(a(n))} × W_{σ(b(n))})
  numberings::WnFamily star;
};

ProductFamily product_family(const numberings::WnFamily& s);

/// c(A × B) as a finite set of pair codes.
FinSet product_set(const FinSet& a, const FinSet& b);

/// D_{h(i)} = {x : ∃y (c(x, y) ∈ D_i ∨ c(y, x) ∈ D_i)}, natively and as a
/// total program on D-codes.
FinSet projection(const FinSet& d);
ProgramIndex projection_program();

struct DiagonalReport {
  std::vector<FinSet> k_members;        // c(A × A) for A ∈ S
  std::vector<Nat> indices;             // γ-indices sampled
  std::uint64_t pairs_checked = 0;
  std::vector<std::pair<Nat, Nat>> mismatches;  // enumerator and brute force disagree
  std::uint64_t unsettled = 0;
  numberings::DiscretenessReport discreteness;
  std::vector<FinSet> star_members;
  bool k_open = false;              // K is effectively open in S*
  bool rice_shapiro_fails = false;  // Ix(K) enumerated, yet K not effectively open

  Verdict verdict() const;
  Json to_json() const;
};

/// K = {c(A × A) : A ∈ S} over S*, with S* numbered by
/// ν(pair(i, j)) = c(γ(i) × γ(j)). Ix_ν(K) is enumerated by the equality
/// witness `eq` of γ; the demo compares it with brute force on the sampled
/// index pairs and reports the discreteness of S. When S is effectively
/// discrete, K is effectively open and no failure can show up.
DiagonalReport diagonal_class_demo(const numberings::PrincipalNumbering& g, const ProgramIndex& eq,
                                   const std::vector<Nat>& indices, std::uint64_t bound, std::uint64_t budget);

}  // namespace etw::riceshapiro
