#pragma once

#include "etw/verdict.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>

namespace etw {

using Json = nlohmann::ordered_json;

/// Result of one named check. `witness` is null when there is nothing to
/// show; `saturation_stage` is the stage or index after which nothing new
/// was found.
struct CheckResult {
  std::string check;
  Verdict verdict = Verdict::Unknown;
  Json witness;
  std::uint64_t saturation_stage = 0;
};

}  // namespace etw
