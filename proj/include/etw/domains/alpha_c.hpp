#pragma once

#include "etw/domains/domain.hpp"
#include "etw/numberings/wn_family.hpp"

#include <map>
#include <memory>
#include <optional>
#include <set>

namespace etw::domains {

using Relation = std::set<std::pair<std::uint64_t, std::uint64_t>>;

/// Stages A_s of the transitive closure of a raw presentation of ≪: A_s is
/// the transitive closure of {(i, j) : pair(i, j) ∈ raw^s}. Pairs enter raw^s
/// only when their code is <= s, so A_s ⊆ {0..s}².
class WayBelowApprox {
 public:
  explicit WayBelowApprox(numberings::CeSet raw);

  /// (i, j) ∈ A_s.
  bool holds(std::uint64_t i, std::uint64_t j, std::uint64_t s);
  Relation stage(std::uint64_t s);
  /// {i : (i, j) ∈ A_s}.
  FinSet below(std::uint64_t j, std::uint64_t s);
  /// Least s with (i, j) ∈ A_s, if that happens by stage `horizon`.
  std::optional<std::uint64_t> entry(std::uint64_t i, std::uint64_t j, std::uint64_t horizon);
  /// Stage after which nothing new enters, when the raw extension is known.
  std::optional<std::uint64_t> saturation();

 private:
  void ensure(std::uint64_t s);
  void add(std::uint64_t i, std::uint64_t j, std::uint64_t t);

  numberings::CeSet raw_;
  std::uint64_t horizon_ = 0;
  bool loaded_ = false;
  bool complete_ = false;
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> closure_;  // pair -> entry stage
  std::uint64_t last_ = 0;
};

WayBelowApprox transitive_presentation(const numberings::CeSet& raw);

/// The chain g_e(0), g_e(1), ... with markers h_e(s); a missing h is the
/// "no candidate" marker.
struct ElementApprox {
  std::vector<std::uint64_t> g;
  std::vector<std::optional<std::uint64_t>> h;

  std::uint64_t value() const { return g.back(); }
  /// Last stage at which g changed (0 if it never did).
  std::uint64_t last_change() const;
};

/// Runs the h_e/g_e stage recursion against a shared ≪ approximation.
/// Stage s+1 reads W_e^{s+1} and A_{s+1}:
///   h(s+1) = min{n ∈ W_e^{s+1} : (n, g(s)) ∉ A_{s+1}}, or no candidate;
///   g(s+1) = min{x > 0 : x ∈ W_e^{s+1}, (g(s), x), (h(s+1), x) ∈ A_{s+1}}
///            when h(s+1) exists and such x does, g(s) otherwise.
class AlphaCConstruction {
 public:
  AlphaCConstruction(std::shared_ptr<WayBelowApprox> a, numberings::CeSet w);

  std::uint64_t g_at(std::uint64_t s);
  std::optional<std::uint64_t> h_at(std::uint64_t s);
  ElementApprox run(std::uint64_t stages);

 private:
  void advance(std::uint64_t s);
  void reset();

  std::shared_ptr<WayBelowApprox> a_;
  numberings::CeSet w_;
  std::uint64_t horizon_ = 0;
  bool loaded_ = false;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> events_;
  std::size_t next_event_ = 0;
  FinSet seen_;
  ElementApprox chain_;
};

ElementApprox alpha_c(const Domain& d, const numberings::CeSet& w, std::uint64_t stages);

/// Number of stages after which alpha_c on the approx set of any element of
/// an explicit domain has settled: every entry of the raw relation and of
/// the approx sets is in by stage S, and the chain then climbs at most k-1
/// times. Returns S + k.
std::uint64_t alpha_c_stage_bound(const Domain& d);

/// {n : (n, g_e(s)) ∈ A_s}, the stage-s part of W_{σ(e)}.
FinSet sigma_c_stage(const Domain& d, const ProgramIndex& e, std::uint64_t s);

/// σ on e returns an index of W_{σ(e)} = {n : ∃s (n, g_e(s)) ∈ A_s}, the
/// approx set of α_c(e). Stages come from the DomainSigmaStage builtin,
/// charged s + 1 steps each. Total.
ProgramIndex sigma_c_program(const Domain& d);

/// The family of approx sets {n : β(n) ≪ a} normalized by sigma_c_program;
/// members listed for explicit domains.
numberings::WnFamily continuous_family(const Domain& d);

}  // namespace etw::domains
