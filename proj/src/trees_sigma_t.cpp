#include "etw/trees/sigma_t.hpp"

#include "etw/kernel/assembler.hpp"
#include "etw/kernel/machine.hpp"
#include "etw/kernel/smn.hpp"

#include <algorithm>
#include <map>

namespace etw::trees {

SigmaTConstruction::SigmaTConstruction(Tree t, numberings::CeSet w) : tree_(std::move(t)), w_(std::move(w)) {}

void SigmaTConstruction::reset() {
  next_event_ = 0;
  stage_ = 0;
  seen_.clear();
  vertex_.reset();
  changed_ = 0;
}

void SigmaTConstruction::extend_horizon(std::uint64_t s) {
  // Entries are recomputed up to a larger horizon and the construction is
  // replayed from the start, so its state stays a function of the entries.
  horizon_ = std::max({s, 2 * horizon_, std::uint64_t{64}});
  events_ = w_.entries(horizon_);
  loaded_ = true;
  reset();
}

void SigmaTConstruction::advance(std::uint64_t s) {
  if (s < stage_) reset();
  if (!loaded_ || s > horizon_) extend_horizon(s);
  // Output at stage t+1 depends on W^t; consume entries with stage <= s-1.
  while (next_event_ < events_.size() && s >= 1 && events_[next_event_].first <= s - 1) {
    auto t = events_[next_event_].first;
    while (next_event_ < events_.size() && events_[next_event_].first == t) seen_.insert(events_[next_event_++].second);
    std::optional<FiniteSeq> best;
    for (auto b : seen_) {
      auto x = delta_decode(b);
      if (vertex_ && !prefix_leq(*vertex_, x)) continue;
      if (!tree_.contains(x)) continue;
      bool closed = true;
      for (const auto& p : prefixes(x)) {
        auto c = delta_code(p);
        if (!c || !seen_.contains(*c)) {
          closed = false;
          break;
        }
      }
      if (!closed) continue;
      if (!best || kb_leq(x, *best)) best = std::move(x);
    }
    if (best && best != vertex_) {
      vertex_ = std::move(best);
      changed_ = t + 1;
    }
  }
  stage_ = s;
}

FinSet SigmaTConstruction::at(std::uint64_t s) {
  advance(s);
  if (!vertex_) return {};
  return path_codes(path_of_vertex(tree_, *vertex_));
}

std::optional<FiniteSeq> SigmaTConstruction::vertex_at(std::uint64_t s) {
  advance(s);
  return vertex_;
}

std::uint64_t SigmaTConstruction::last_change(std::uint64_t s) {
  advance(s);
  return changed_;
}

FinSet sigma_T_stage(const Tree& t, const ProgramIndex& n, std::uint64_t s) {
  SigmaTConstruction c(t, numberings::CeSet(n));
  return c.at(s);
}

namespace {

// One construction per (tree, n), kept between builtin calls so consecutive
// stages cost only the new work. Results do not depend on the cache.
struct ConstructionCache {
  std::map<std::pair<Nat, Nat>, std::unique_ptr<SigmaTConstruction>> jobs;
};

thread_local ConstructionCache g_constructions;

kernel::BuiltinResult tree_sigma_stage(const Nat& arg) {
  auto [tree_code, rest] = unpair(arg);
  auto [n, s_nat] = unpair(rest);
  auto s = saturate_u64(s_nat);
  auto key = std::pair{tree_code, n};
  auto& jobs = g_constructions.jobs;
  auto it = jobs.find(key);
  if (it == jobs.end()) {
    if (jobs.size() >= 4096) jobs.clear();
    it = jobs.emplace(key, std::make_unique<SigmaTConstruction>(Tree::from_code(tree_code),
                                                               numberings::CeSet(ProgramIndex{n})))
             .first;
  }
  return {dn_encode(it->second->at(s)), s + 1};
}

}  // namespace

const kernel::Builtin* tree_sigma_stage_builtin() {
  static const kernel::Builtin b = tree_sigma_stage;
  return &b;
}

ProgramIndex sigma_T_program(const Tree& t) {
  using kernel::Assembler;
  const Nat id = static_cast<std::uint32_t>(kernel::BuiltinId::TreeSigmaStage);
  const Nat tc = t.code();

  // Enumerator on pair(pair(T, n), c): halt once c is in some stage.
  Assembler e;
  {
    auto loop = e.label();
    e.left(1, 2);   // pair(T, n)
    e.right(1, 3);  // c
    e.left(2, 4);
    e.right(2, 5);
    e.load(6, id);
    e.zero(7);  // s
    e.load(10, 1);
    e.bind(loop);
    e.pair(5, 7, 8);
    e.pair(4, 8, 8);
    e.native(6, 8, 9);
    e.bit(9, 3, 11);
    e.jump_if_equal(11, 10, e.halt());
    e.succ(7);
    e.jump(loop);
  }

  // sigma on n: wait for a nonempty stage, then return smn(enumerator, pair(T, n)).
  Assembler a;
  auto loop = a.label(), next = a.label();
  a.load(2, tc);
  a.load(3, id);
  a.zero(4);  // s
  a.zero(7);
  a.bind(loop);
  a.pair(1, 4, 5);
  a.pair(2, 5, 5);
  a.native(3, 5, 6);
  a.jump_if_equal(6, 7, next);
  a.pair(2, 1, 8);
  a.load(9, e.index().code);
  a.smn(9, 8, 1);
  a.jump(a.halt());
  a.bind(next);
  a.succ(4);
  a.jump(loop);
  return a.index();
}

numberings::WnFamily s_T_family(const Tree& t) {
  numberings::WnFamily f;
  f.sigma = sigma_T_program(t);
  if (t.kind() == Tree::Kind::Explicit) f.members = s_T_members(t);
  return f;
}

}  // namespace etw::trees
