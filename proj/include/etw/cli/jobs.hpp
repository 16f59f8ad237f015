#pragma once

#include "etw/check.hpp"
#include "etw/domains/domain.hpp"
#include "etw/trees/tree.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace etw::cli {

enum class JobType : std::uint8_t { We = 1, SigmaT = 2, AlphaC = 3 };

std::string_view job_name(JobType t);

/// Stage state of an enumeration job. `rows` holds what the stages produced
/// so far: (stage, x) entries for W_e, (stage, D-code) output changes for
/// the σ_T construction, (stage, g, h + 1 or 0) for the α_c chain.
struct JobState {
  JobType type = JobType::We;
  std::string key;  // the job's inputs, rendered canonically
  std::uint64_t stage = 0;
  std::vector<std::vector<Nat>> rows;

  friend bool operator==(const JobState&, const JobState&) = default;
};

struct SnapshotError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr std::string_view kSnapshotMagic = "ETWSNAP1";
inline constexpr std::uint16_t kSnapshotVersion = 1;

/// Binary layout, integers little-endian: magic, u16 version, u8 job type,
/// u32-length key, u64 stage, u32 row count, then per row a u32 width and
/// per entry a u32 byte count and the big-endian bytes of the number.
std::string encode_snapshot(const JobState& s);
JobState decode_snapshot(std::string_view bytes);
void save_snapshot(const std::string& path, const JobState& s);
JobState load_snapshot(const std::string& path);

/// A stage-by-stage job whose state can be cut at any stage and resumed.
/// run_to(S) from a resumed state gives the same state as one run to S.
class EnumerationJob {
 public:
  static EnumerationJob we(kernel::ProgramIndex e);
  static EnumerationJob sigma_t(trees::Tree t, kernel::ProgramIndex n);
  static EnumerationJob alpha_c(domains::Domain d, std::size_t element);

  JobType type() const { return state_.type; }
  const JobState& state() const { return state_; }

  /// Replaces the state with a snapshot of the same job. Throws
  /// SnapshotError when the type or inputs differ.
  void resume(JobState s);
  /// Runs stages state().stage + 1 .. stages. Throws SnapshotError when the
  /// state is already past `stages`.
  void run_to(std::uint64_t stages);

  CheckResult result() const;

 private:
  EnumerationJob() = default;

  JobState state_;
  kernel::ProgramIndex program_;
  std::optional<trees::Tree> tree_;
  std::optional<domains::Domain> domain_;
  std::size_t element_ = 0;
};

}  // namespace etw::cli
