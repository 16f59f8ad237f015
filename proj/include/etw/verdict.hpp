#pragma once

#include <string_view>

namespace etw {

/// Outcome of a budgeted check. Unknown means "not settled at this budget";
/// it never stands in for a negative answer.
enum class Verdict { Verified, Refuted, Unknown };

constexpr std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Verified: return "verified";
    case Verdict::Refuted: return "refuted";
    case Verdict::Unknown: return "unknown";
  }
  return "unknown";
}

/// Combines verdicts of independent sub-checks: any refutation wins, then
/// any unknown.
constexpr Verdict combine(Verdict a, Verdict b) {
  if (a == Verdict::Refuted || b == Verdict::Refuted) return Verdict::Refuted;
  if (a == Verdict::Unknown || b == Verdict::Unknown) return Verdict::Unknown;
  return Verdict::Verified;
}

}  // namespace etw
