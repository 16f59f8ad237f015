#pragma once

#include "etw/kernel/machine.hpp"

#include <optional>
#include <vector>

namespace etw::numberings {

using kernel::ProgramIndex;

/// A c.e. set W_e. Stage i of its presentation is W_e^i. Sets built with
/// finite() also know their extension and halting times, so their stages
/// are read off without running the machine (the results are identical).
class CeSet {
 public:
  explicit CeSet(ProgramIndex e) : index_(std::move(e)) {}
  static CeSet finite(const FinSet& f);

  const ProgramIndex& index() const { return index_; }
  const std::optional<FinSet>& extension() const { return extension_; }

  /// W_e^i, equal to kernel::we_stage_set(index(), i).
  FinSet stage(std::uint64_t i) const;
  /// {x <= bound : phi_e(x) halts within `budget` steps}.
  FinSet below(std::uint64_t bound, std::uint64_t budget) const;
  /// Stage at which x enters, if it has entered by stage s.
  std::optional<std::uint64_t> entry(std::uint64_t x, std::uint64_t s) const;
  /// Every (stage, x) with x entering by stage `horizon`, sorted by stage
  /// then x.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> entries(std::uint64_t horizon) const;

 private:
  ProgramIndex index_;
  std::optional<FinSet> extension_;
};

/// Incremental stages of one program: halting times found at one stage are
/// reused at the next. Owned by a single job; not thread-safe.
class StageTracker {
 public:
  explicit StageTracker(ProgramIndex e) : e_(std::move(e)) {}

  FinSet stage(std::uint64_t s);
  std::optional<std::uint64_t> entry(std::uint64_t x, std::uint64_t s);

 private:
  struct Info {
    std::uint64_t tried = 0;  // budget already known to be insufficient
    std::optional<std::uint64_t> time;
    bool never = false;
  };
  ProgramIndex e_;
  std::vector<Info> info_;
};

/// V_i = W_{f(i)} for a total selector f.
struct ComputableCeSequence {
  ProgramIndex selector;
  /// f(i) when it halts within the budget.
  std::optional<ProgramIndex> member(std::uint64_t i, std::uint64_t budget) const;
};

/// V_i = D_{h(i)} for a total h.
struct StrongFiniteSequence {
  ProgramIndex selector;
  std::optional<FinSet> member(std::uint64_t i, std::uint64_t budget) const;
};

/// Program computing i -> codes[min(i, size-1)]; the tail repeats the last
/// entry. Used to present finite tables as total computable sequences.
ProgramIndex table_program(const std::vector<Nat>& codes);

}  // namespace etw::numberings
