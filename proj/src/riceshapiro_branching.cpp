#include "etw/riceshapiro/riceshapiro.hpp"

#include "etw/kernel/assembler.hpp"
#include "etw/kernel/library.hpp"
#include "etw/kernel/machine.hpp"
#include "etw/kernel/smn.hpp"

namespace etw::riceshapiro {

using kernel::Assembler;

Json BranchingResult::to_json() const {
  Json j;
  j["verdict"] = verdict_name(verdict);
  j["e"] = e ? Json(to_string(*e)) : Json(nullptr);
  j["p"] = p ? Json(*p) : Json(nullptr);
  j["W_e"] = we;
  j["V_p_union_W_r_p"] = rhs;
  j["bound"] = bound;
  j["budget"] = budget;
  return j;
}

ProgramIndex branching_program(const BranchingInstance& inst) {
  // On pair(z, x) with z the program's own index: r7 stage s, r9 = 0, r10 = 1.
  Assembler t;
  {
    auto loop = t.label(), not_yet = t.label();
    t.left(1, 2);
    t.right(1, 3);
    t.load(4, inst.w.code);
    t.load(5, inst.v_stages.code);
    t.load(6, inst.r.code);
    t.zero(7);
    t.zero(9);
    t.load(10, 1);
    t.bind(loop);
    t.eval(4, 2, 7, 8);
    t.jump_if_equal(8, 9, not_yet);
    // Switched at p = s: x ∈ V_p, else x ∈ W_{r(p)}.
    t.call(5, 7, 11);
    t.bit(11, 3, 12);
    t.jump_if_equal(12, 10, t.halt());
    t.call(6, 7, 13);
    t.call(13, 3, 14);
    t.jump(t.halt());
    t.bind(not_yet);
    t.call(5, 7, 11);
    t.bit(11, 3, 12);
    t.jump_if_equal(12, 10, t.halt());
    t.succ(7);
    t.jump(loop);
  }
  Assembler f;
  f.load(2, t.index().code);
  f.smn(2, 1, 1);
  return kernel::fixpoint(f.index());
}

BranchingResult branching(const BranchingInstance& inst, std::uint64_t budget, std::uint64_t bound) {
  BranchingResult res;
  res.bound = bound;
  res.budget = budget;
  const auto e = branching_program(inst);
  res.e = e.code;

  auto in_w = kernel::run_steps(inst.w, e.code, budget);
  if (!in_w.halted()) return res;
  const auto p = in_w.steps_used;
  res.p = p;

  auto vp = kernel::run_steps(inst.v_stages, p, budget);
  auto q = kernel::run_steps(inst.r, p, budget);
  if (!vp.halted() || !q.halted()) return res;
  const auto v = dn_decode(*vp.value);

  bool settled = true, refuted = false;
  for (std::uint64_t x = 0; x <= bound; ++x) {
    auto lhs = kernel::run_steps(e, x, budget);
    bool rhs_in = v.contains(x);
    kernel::EvalResult rhs = kernel::EvalResult::exhausted(0);
    if (!rhs_in) {
      rhs = kernel::run_steps(ProgramIndex{*q.value}, x, budget);
      rhs_in = rhs.halted();
    }
    if (lhs.halted()) res.we.insert(x);
    if (rhs_in) res.rhs.insert(x);
    if (lhs.halted() == rhs_in) {
      if (!lhs.halted() && !(lhs.diverged && rhs.diverged)) settled = false;
      continue;
    }
    // A definite mismatch needs the silent side to be provably divergent.
    if ((lhs.halted() && rhs.diverged) || (rhs_in && lhs.diverged))
      refuted = true;
    else
      settled = false;
  }
  res.verdict = refuted ? Verdict::Refuted : settled ? Verdict::Verified : Verdict::Unknown;
  return res;
}

std::vector<BranchingInstance> branching_fixtures() {
  // W = {n : 0 ∈ W_n}: run φ_n(0).
  Assembler w1;
  w1.zero(2);
  w1.call(1, 2, 1);
  // Same set, another index.
  Assembler w3;
  w3.zero(3);
  w3.zero(2);
  w3.call(1, 2, 1);

  const auto zero_one = numberings::CeSet::finite({0, 1}).index();
  return {
      {"zero-to-zero-one", w1.index(), kernel::lib::constant(1), kernel::lib::constant(zero_one.code)},
      {"empty", kernel::lib::identity(), kernel::lib::constant(0), kernel::lib::constant(kernel::lib::loop().code)},
      {"zero-to-zero-one-reindexed", w3.index(), kernel::lib::constant(1), kernel::lib::constant(zero_one.code)},
  };
}

}  // namespace etw::riceshapiro
