#include "etw/numberings/ceset.hpp"

#include "etw/kernel/assembler.hpp"
#include "etw/kernel/library.hpp"

#include <algorithm>
#include <stdexcept>

namespace etw::numberings {

CeSet CeSet::finite(const FinSet& f) {
  CeSet c(kernel::lib::member_list(f));
  c.extension_ = f;
  return c;
}

std::optional<std::uint64_t> CeSet::entry(std::uint64_t x, std::uint64_t s) const {
  if (x > s) return std::nullopt;
  if (extension_) {
    auto t = kernel::lib::member_list_time(*extension_, x);
    if (!t) return std::nullopt;
    auto at = std::max(x, *t);
    if (at > s) return std::nullopt;
    return at;
  }
  auto r = kernel::run_steps(index_, x, s);
  if (!r.halted()) return std::nullopt;
  return std::max(x, r.steps_used);
}

FinSet CeSet::stage(std::uint64_t i) const {
  FinSet out;
  if (extension_) {
    for (auto x : *extension_)
      if (entry(x, i)) out.insert(x);
    return out;
  }
  for (std::uint64_t x = 0; x <= i; ++x)
    if (entry(x, i)) out.insert(x);
  return out;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> CeSet::entries(std::uint64_t horizon) const {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  if (extension_) {
    for (auto x : *extension_)
      if (auto t = entry(x, horizon)) out.emplace_back(*t, x);
  } else {
    for (std::uint64_t x = 0; x <= horizon; ++x)
      if (auto t = entry(x, horizon)) out.emplace_back(*t, x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

FinSet CeSet::below(std::uint64_t bound, std::uint64_t budget) const {
  FinSet out;
  if (extension_) {
    for (auto x : *extension_) {
      if (x > bound) break;
      auto t = kernel::lib::member_list_time(*extension_, x);
      if (t && *t <= budget) out.insert(x);
    }
    return out;
  }
  for (std::uint64_t x = 0; x <= bound; ++x)
    if (kernel::run_steps(index_, x, budget).halted()) out.insert(x);
  return out;
}

std::optional<std::uint64_t> StageTracker::entry(std::uint64_t x, std::uint64_t s) {
  if (x > s) return std::nullopt;
  if (info_.size() <= x) info_.resize(x + 1);
  auto& in = info_[x];
  if (!in.time && !in.never && in.tried < s) {
    // Grow geometrically so repeated stage queries stay linear overall.
    std::uint64_t budget = std::max<std::uint64_t>(s, in.tried > UINT64_MAX / 2 ? UINT64_MAX : 2 * in.tried);
    auto r = kernel::run_steps(e_, x, budget);
    if (r.halted()) {
      in.time = r.steps_used;
    } else if (r.diverged) {
      in.never = true;
    } else {
      in.tried = budget;
    }
  }
  if (!in.time) return std::nullopt;
  auto at = std::max(x, *in.time);
  if (at > s) return std::nullopt;
  return at;
}

FinSet StageTracker::stage(std::uint64_t s) {
  FinSet out;
  for (std::uint64_t x = 0; x <= s; ++x)
    if (entry(x, s)) out.insert(x);
  return out;
}

std::optional<ProgramIndex> ComputableCeSequence::member(std::uint64_t i, std::uint64_t budget) const {
  auto r = kernel::run_steps(selector, i, budget);
  if (!r.halted()) return std::nullopt;
  return ProgramIndex{*r.value};
}

std::optional<FinSet> StrongFiniteSequence::member(std::uint64_t i, std::uint64_t budget) const {
  auto r = kernel::run_steps(selector, i, budget);
  if (!r.halted()) return std::nullopt;
  return dn_decode(*r.value);
}

ProgramIndex table_program(const std::vector<Nat>& codes) {
  if (codes.empty()) throw std::invalid_argument("table_program: empty table");
  kernel::Assembler a;
  std::vector<kernel::Assembler::Label> hit;
  for (std::size_t i = 0; i + 1 < codes.size(); ++i) {
    hit.push_back(a.label());
    a.load(2, i);
    a.jump_if_equal(1, 2, hit.back());
  }
  a.load(1, codes.back());
  a.jump(a.halt());
  for (std::size_t i = 0; i + 1 < codes.size(); ++i) {
    a.bind(hit[i]);
    a.load(1, codes[i]);
    a.jump(a.halt());
  }
  return a.index();
}

}  // namespace etw::numberings
