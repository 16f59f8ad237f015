#pragma once

#include "etw/numberings/ceset.hpp"
#include "etw/numberings/wn_family.hpp"
#include "etw/trees/tree.hpp"

#include <optional>

namespace etw::trees {

/// Stage construction of W_{σ(n)} for S_T. Stage 0 is ∅. Stage s+1 looks
/// at W_n^s and picks the ≤_KB-least b in it such that δ(b) ∈ T, the codes
/// of all prefixes of δ(b) are in W_n^s, and δ(b) extends the vertex chosen
/// before; the output is then the δ-code set of p_{δ(b)}. Stages only
/// change when W_n^s does, so the construction jumps between entry stages.
class SigmaTConstruction {
 public:
  SigmaTConstruction(Tree t, numberings::CeSet w);

  /// δ-codes of the stage-s output.
  FinSet at(std::uint64_t s);
  /// Vertex chosen by stage s, if any.
  std::optional<FiniteSeq> vertex_at(std::uint64_t s);
  /// Last stage <= s at which the output changed (0 if it never did).
  std::uint64_t last_change(std::uint64_t s);

 private:
  void reset();
  void advance(std::uint64_t s);
  void extend_horizon(std::uint64_t s);

  Tree tree_;
  numberings::CeSet w_;
  std::uint64_t horizon_ = 0;
  bool loaded_ = false;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> events_;  // (stage, x)
  std::size_t next_event_ = 0;
  std::uint64_t stage_ = 0;  // output computed for stages <= stage_
  FinSet seen_;
  std::optional<FiniteSeq> vertex_;
  std::uint64_t changed_ = 0;
};

/// W^s_{σ(n)} for the stage construction.
FinSet sigma_T_stage(const Tree& t, const ProgramIndex& n, std::uint64_t s);

/// Program for σ: on n, runs the stages until the output is nonempty, then
/// returns an index enumerating the union of all stages. Stages are
/// computed by the TreeSigmaStage builtin, charged s + 1 steps each.
ProgramIndex sigma_T_program(const Tree& t);

/// S_T as a wn-family with σ = sigma_T_program; members listed on the
/// explicit tier.
numberings::WnFamily s_T_family(const Tree& t);

}  // namespace etw::trees
