#pragma once

#include "etw/kernel/program.hpp"
#include "etw/trees/sequence.hpp"

#include <memory>
#include <set>
#include <stdexcept>
#include <vector>

namespace etw::trees {

using kernel::ProgramIndex;
using PartialPath = std::set<FiniteSeq>;

/// A downward closed set of finite sequences containing (). Explicit trees
/// list their vertices; program trees hold a total 0/1 program on δ-codes;
/// the inseparable tree is built in.
class Tree {
 public:
  enum class Kind { Explicit, Program, Inseparable };

  /// Throws std::invalid_argument unless the vertices form a tree.
  static Tree explicit_tree(std::set<FiniteSeq> vertices);
  /// Membership runs `membership` on δ-codes with the given step budget;
  /// a run that does not halt within it throws std::runtime_error.
  static Tree program_tree(ProgramIndex membership, std::uint64_t budget = 100000);
  static Tree inseparable();

  Kind kind() const { return kind_; }
  bool contains(const FiniteSeq& x) const;
  /// Explicit tier only.
  const std::set<FiniteSeq>& vertices() const;
  /// Vertices of length <= depth with entries < alphabet, as an explicit tree.
  Tree truncate(std::size_t depth, std::uint64_t alphabet) const;

  /// pair(0, D-code of the vertex δ-codes), pair(1, e) or pair(2, 0).
  Nat code() const;
  static Tree from_code(const Nat& code);

  const ProgramIndex& membership() const { return membership_; }

 private:
  Kind kind_ = Kind::Explicit;
  std::set<FiniteSeq> vertices_;
  ProgramIndex membership_;
  std::uint64_t budget_ = 0;
};

/// p_x = {y : y ⊑ x}. Throws std::domain_error when x is not in T.
PartialPath path_of_vertex(const Tree& t, const FiniteSeq& x);
/// Whether p is a downward closed, ⊑-linear subset of T.
bool is_partial_path(const Tree& t, const PartialPath& p);
/// δ-codes of a partial path.
FinSet path_codes(const PartialPath& p);

/// δ-code sets of all nonempty finite partial paths, one per vertex in
/// increasing δ order. Explicit tier only.
std::vector<FinSet> s_T_members(const Tree& t);

/// Binary tree of 0/1 sequences τ with, for all i < |τ|, τ(i) = 1 when
/// φ_i(i) halts with 0 within |τ| steps and τ(i) = 0 when it halts with 1.
/// Membership of a sequence of length L costs about L² steps of simulation.
Tree inseparable_tree();
bool inseparable_contains(const FiniteSeq& x);

/// Every tree with at most `max_vertices` vertices over entries < alphabet.
std::vector<Tree> enumerate_trees(std::size_t max_vertices, std::uint64_t alphabet);

}  // namespace etw::trees
