#pragma once

#include "etw/check.hpp"
#include "etw/cli/instance.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace etw::cli {

inline constexpr std::uint64_t kDefaultBudget = 100000;
inline constexpr std::uint64_t kDefaultStages = 1000;
inline constexpr std::uint64_t kDefaultBound = 10;
inline constexpr const char* kToolVersion = "1.0.0";

/// Bad verb, target, flag or reference. Exit status 3.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Default step budget: ETW_DEFAULT_BUDGET when set, else 10^5. Throws
/// UsageError when the variable is not a positive integer.
std::uint64_t default_budget();

struct Options {
  std::optional<std::uint64_t> budget, stages, bound;
  std::optional<std::string> snapshot, resume;
};

struct Record {
  CheckResult result;
  std::uint64_t budget = 0;
  double wall_ms = 0;
};

struct Report {
  std::string verb;
  std::vector<std::string> target;
  std::string instance_digest;
  std::uint64_t budget = 0, stages = 0, bound = 0;
  std::uint64_t default_budget = 0;
  std::vector<Record> checks;

  Verdict verdict() const;
  /// Deterministic part: same inputs, same bytes.
  Json to_json() const;
  /// Wall times and other run-dependent data.
  Json metadata() const;
  std::string text() const;
};

/// 0 verified, 1 refuted, 2 unknown.
int exit_status(Verdict v);
inline constexpr int kUsageStatus = 3;

/// Runs one command against an instance. Throws UsageError for anything
/// that does not resolve.
Report run_command(const std::string& verb, const std::vector<std::string>& target, const Options& opts,
                   const InstanceFile& inst);

}  // namespace etw::cli
