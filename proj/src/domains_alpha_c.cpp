#include "etw/domains/alpha_c.hpp"

#include "etw/kernel/assembler.hpp"
#include "etw/kernel/machine.hpp"

#include <algorithm>
#include <limits>

namespace etw::domains {

WayBelowApprox::WayBelowApprox(numberings::CeSet raw) : raw_(std::move(raw)) {}

void WayBelowApprox::add(std::uint64_t i, std::uint64_t j, std::uint64_t t) {
  if (closure_.contains({i, j})) return;
  std::vector<std::uint64_t> from{i}, to{j};
  for (const auto& [p, st] : closure_) {
    if (p.second == i) from.push_back(p.first);
    if (p.first == j) to.push_back(p.second);
  }
  for (auto a : from)
    for (auto b : to) closure_.emplace(std::pair{a, b}, t);
}

void WayBelowApprox::ensure(std::uint64_t s) {
  if (complete_ || (loaded_ && s <= horizon_)) return;
  // Rebuilt from scratch at the larger horizon; entries by the old horizon
  // are unchanged, so earlier answers stay valid.
  horizon_ = std::max({s, 2 * horizon_, std::uint64_t{64}});
  auto events = raw_.entries(horizon_);
  closure_.clear();
  last_ = 0;
  for (auto [t, x] : events) {
    auto [i, j] = unpair(x);
    add(i, j, t);
    last_ = t;
  }
  loaded_ = true;
  complete_ = raw_.extension() && events.size() == raw_.extension()->size();
}

bool WayBelowApprox::holds(std::uint64_t i, std::uint64_t j, std::uint64_t s) {
  ensure(s);
  auto it = closure_.find({i, j});
  return it != closure_.end() && it->second <= s;
}

Relation WayBelowApprox::stage(std::uint64_t s) {
  ensure(s);
  Relation out;
  for (const auto& [p, t] : closure_)
    if (t <= s) out.insert(p);
  return out;
}

FinSet WayBelowApprox::below(std::uint64_t j, std::uint64_t s) {
  ensure(s);
  FinSet out;
  for (const auto& [p, t] : closure_)
    if (p.second == j && t <= s) out.insert(p.first);
  return out;
}

std::optional<std::uint64_t> WayBelowApprox::entry(std::uint64_t i, std::uint64_t j, std::uint64_t horizon) {
  ensure(horizon);
  auto it = closure_.find({i, j});
  if (it == closure_.end() || it->second > horizon) return std::nullopt;
  return it->second;
}

std::optional<std::uint64_t> WayBelowApprox::saturation() {
  if (!raw_.extension()) return std::nullopt;
  for (std::uint64_t s = 64; !complete_; s *= 2) ensure(s);
  return last_;
}

WayBelowApprox transitive_presentation(const numberings::CeSet& raw) { return WayBelowApprox(raw); }

std::uint64_t ElementApprox::last_change() const {
  for (std::size_t s = g.size(); s-- > 1;)
    if (g[s] != g[s - 1]) return s;
  return 0;
}

AlphaCConstruction::AlphaCConstruction(std::shared_ptr<WayBelowApprox> a, numberings::CeSet w)
    : a_(std::move(a)), w_(std::move(w)) {
  reset();
}

void AlphaCConstruction::reset() {
  next_event_ = 0;
  seen_.clear();
  chain_.g = {0};
  chain_.h = {std::uint64_t{0}};
}

void AlphaCConstruction::advance(std::uint64_t s) {
  if (!loaded_ || s > horizon_) {
    horizon_ = std::max({s, 2 * horizon_, std::uint64_t{64}});
    events_ = w_.entries(horizon_);
    loaded_ = true;
    reset();
  }
  while (chain_.g.size() <= s) {
    const std::uint64_t t = chain_.g.size();  // computing stage t = s' + 1
    while (next_event_ < events_.size() && events_[next_event_].first <= t) seen_.insert(events_[next_event_++].second);
    const auto g = chain_.g.back();
    std::optional<std::uint64_t> k;
    for (auto n : seen_)
      if (!a_->holds(n, g, t)) {
        k = n;
        break;
      }
    auto next = g;
    if (k)
      for (auto x : seen_)
        if (x > 0 && a_->holds(g, x, t) && a_->holds(*k, x, t)) {
          next = x;
          break;
        }
    chain_.h.push_back(k);
    chain_.g.push_back(next);
  }
}

std::uint64_t AlphaCConstruction::g_at(std::uint64_t s) {
  advance(s);
  return chain_.g[s];
}

std::optional<std::uint64_t> AlphaCConstruction::h_at(std::uint64_t s) {
  advance(s);
  return chain_.h[s];
}

ElementApprox AlphaCConstruction::run(std::uint64_t stages) {
  advance(stages);
  ElementApprox out;
  out.g.assign(chain_.g.begin(), chain_.g.begin() + stages + 1);
  out.h.assign(chain_.h.begin(), chain_.h.begin() + stages + 1);
  return out;
}

ElementApprox alpha_c(const Domain& d, const numberings::CeSet& w, std::uint64_t stages) {
  AlphaCConstruction c(std::make_shared<WayBelowApprox>(d.raw_way_below()), w);
  return c.run(stages);
}

std::uint64_t alpha_c_stage_bound(const Domain& d) {
  WayBelowApprox a(d.raw_way_below());
  std::uint64_t s = *a.saturation();
  constexpr auto far = std::numeric_limits<std::uint64_t>::max();
  for (std::size_t x = 0; x < d.size(); ++x)
    for (auto [t, n] : numberings::CeSet::finite(d.approx_set(x)).entries(far)) s = std::max(s, t);
  return s + d.size();
}

FinSet sigma_c_stage(const Domain& d, const ProgramIndex& e, std::uint64_t s) {
  auto a = std::make_shared<WayBelowApprox>(d.raw_way_below());
  AlphaCConstruction c(a, numberings::CeSet(e));
  return a->below(c.g_at(s), s);
}

namespace {

struct Job {
  std::shared_ptr<WayBelowApprox> a;
  AlphaCConstruction c;
};

// One construction per (domain, e), kept between builtin calls so
// consecutive stages cost only the new work. Results do not depend on it.
thread_local std::map<std::pair<Nat, Nat>, std::unique_ptr<Job>> g_jobs;

kernel::BuiltinResult domain_sigma_stage(const Nat& arg) {
  auto [dc, rest] = unpair(arg);
  auto [e, s_nat] = unpair(rest);
  auto s = saturate_u64(s_nat);
  auto key = std::pair{dc, e};
  auto it = g_jobs.find(key);
  if (it == g_jobs.end()) {
    if (g_jobs.size() >= 4096) g_jobs.clear();
    auto a = std::make_shared<WayBelowApprox>(Domain::from_code(dc).raw_way_below());
    auto job = std::make_unique<Job>(Job{a, AlphaCConstruction(a, numberings::CeSet(ProgramIndex{e}))});
    it = g_jobs.emplace(key, std::move(job)).first;
  }
  auto& job = *it->second;
  return {dn_encode(job.a->below(job.c.g_at(s), s)), s + 1};
}

}  // namespace

const kernel::Builtin* domain_sigma_stage_builtin() {
  static const kernel::Builtin b = domain_sigma_stage;
  return &b;
}

ProgramIndex sigma_c_program(const Domain& d) {
  using kernel::Assembler;
  const Nat id = static_cast<std::uint32_t>(kernel::BuiltinId::DomainSigmaStage);

  // Enumerator on pair(pair(D, e), n): halt once n is in some stage.
  Assembler en;
  {
    auto loop = en.label();
    en.left(1, 2);
    en.right(1, 3);  // n
    en.left(2, 4);   // D
    en.right(2, 5);  // e
    en.load(6, id);
    en.zero(7);  // s
    en.load(10, 1);
    en.bind(loop);
    en.pair(5, 7, 8);
    en.pair(4, 8, 8);
    en.native(6, 8, 9);
    en.bit(9, 3, 11);
    en.jump_if_equal(11, 10, en.halt());
    en.succ(7);
    en.jump(loop);
  }

  Assembler a;
  a.load(2, d.code());
  a.pair(2, 1, 3);
  a.load(4, en.index().code);
  a.smn(4, 3, 1);
  return a.index();
}

numberings::WnFamily continuous_family(const Domain& d) {
  numberings::WnFamily f;
  f.sigma = sigma_c_program(d);
  if (d.kind() == Domain::Kind::Explicit) {
    std::vector<FinSet> members;
    for (std::size_t a = 0; a < d.size(); ++a) members.push_back(d.approx_set(a));
    f.members = std::move(members);
  }
  return f;
}

}  // namespace etw::domains
