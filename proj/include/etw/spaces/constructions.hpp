#pragma once

#include "etw/numberings/wn_family.hpp"
#include "etw/spaces/space.hpp"
#include "etw/trees/tree.hpp"

namespace etw::spaces {

/// X_T for an explicit tree: points are the nonempty finite partial paths
/// p_x (listed by the δ-code of x), α(i) = 𝔄_{δ(i)}, and the witness
/// b_n = p_{δ(c_n)}, 𝒪_n = 𝔄_{δ(c_n)} for the vertex codes c_0 < c_1 < ...
struct TreeSpace {
  Space space;
  ModularWitness witness;
  std::vector<trees::FiniteSeq> vertices;  // point i is p_{vertices[i]}
  std::vector<std::uint64_t> codes;        // δ-codes of the vertices
};
TreeSpace build_X_T(const trees::Tree& t);

/// X_S for an explicit wn-family: one point per γ-class, found through the
/// principal numbering; α_S(n) = {[i] : D_n ⊆ γ(i)}. `star` is the family of
/// A-sets γ*(i) = {n : D_n ⊆ γ(i)} normalized by σ*.
struct FamilySpace {
  Space space;
  numberings::PrincipalNumbering gamma;
  std::vector<Nat> representatives;  // some i with [i] = point
  std::vector<FinSet> classes;       // γ(i) read below the bound
  numberings::WnFamily star;
};
/// Throws std::runtime_error when some member has no index found at the
/// given search limits.
FamilySpace build_X_S(const numberings::WnFamily& s, std::uint64_t bound, std::uint64_t budget,
                      std::uint64_t search = 300);

/// σ* from σ: W_{σ*(m)} = {n : D_n ⊆ W_{σ(g(m))}} with W_{g(m)} = ⋃_{n ∈ W_m} D_n.
ProgramIndex sigma_star(const ProgramIndex& sigma);
/// γ*(A) = {n : D_n ⊆ A} for a finite A.
FinSet gamma_star(const FinSet& a);

/// f([i]) = γ(i) is a bijection onto the members and β(n) = f(α_S(n)) for
/// every n < 2^bits, where β(n) = {V ∈ S : D_n ⊆ V}.
CheckResult homeomorphism_check(const FamilySpace& xs, const std::vector<FinSet>& members, unsigned bits = 8);

}  // namespace etw::spaces
