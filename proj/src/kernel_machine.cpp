#include "etw/kernel/machine.hpp"

#include "etw/kernel/smn.hpp"

#include <map>
#include <memory>
#include <unordered_map>

namespace etw::kernel {

namespace {

constexpr std::uint64_t kHalt = UINT64_MAX;
constexpr std::uint64_t kEagerLength = 4096;

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > UINT64_MAX - b ? UINT64_MAX : a + b;
}

std::uint64_t value_cost(const Nat& v) {
  auto l = limb_count(v);
  return l > 1 ? l : 1;
}

struct Decoded {
  Op op = Op::Zero;
  std::array<std::uint32_t, 4> slot{};
  std::uint64_t target = kHalt;  // 0-based
  Nat constant;
  std::uint64_t const_cost = 1;
  std::uint32_t max_slot = 0;
};

/// Decoded form of a program with registers renumbered to dense slots
/// (register 1 is slot 0). Long programs are decoded one instruction at a
/// time on first use.
class Executable {
 public:
  explicit Executable(const ProgramIndex& e) {
    slots_.emplace(Nat(1), 0);
    if (e.code.is_zero()) return;
    auto [len, body] = split_index(e);
    length_ = saturate_u64(len);
    len_ = std::move(len);
    body_ = std::move(body);
    if (length_ <= kEagerLength) {
      auto codes = decode_tuple(body_, static_cast<std::size_t>(length_));
      eager_.reserve(codes.size());
      for (const auto& c : codes) eager_.push_back(translate(decode_instruction(c)));
    }
  }

  std::uint64_t length() const { return length_; }
  std::size_t slot_count() const { return slots_.size(); }

  const Decoded& at(std::uint64_t pc) {
    if (!eager_.empty() || length_ == 0) return eager_[pc];
    auto it = lazy_.find(pc);
    if (it == lazy_.end())
      it = lazy_.emplace(pc, translate(fetch_instruction(body_, len_, Nat(pc)))).first;
    return it->second;
  }

 private:
  std::uint32_t slot_of(const Nat& reg) {
    auto [it, inserted] = slots_.emplace(reg, static_cast<std::uint32_t>(slots_.size()));
    return it->second;
  }

  Decoded translate(const Instruction& ins) {
    Decoded d;
    d.op = ins.op;
    const auto& info = op_info(ins.op);
    for (std::size_t i = 0; i < info.arity; ++i) {
      switch (info.roles[i]) {
        case Operand::Reg:
          d.slot[i] = slot_of(ins.args[i]);
          d.max_slot = std::max(d.max_slot, d.slot[i]);
          break;
        case Operand::Target: {
          Nat q = ins.args[i] - 1;
          if (q >= len_) {
            d.target = kHalt;
          } else {
            auto v = to_u64(q);
            if (!v || *v == kHalt) throw std::overflow_error("jump target exceeds 64-bit program counter");
            d.target = *v;
          }
          break;
        }
        case Operand::Constant:
          d.constant = ins.args[i];
          d.const_cost = value_cost(d.constant);
          break;
      }
    }
    return d;
  }

  std::uint64_t length_ = 0;
  Nat len_ = 0;
  Nat body_ = 0;
  std::vector<Decoded> eager_;
  std::unordered_map<std::uint64_t, Decoded> lazy_;
  std::map<Nat, std::uint32_t> slots_;
};

thread_local std::map<Nat, std::shared_ptr<Executable>> g_cache;

std::shared_ptr<Executable> executable(const Nat& code) {
  auto it = g_cache.find(code);
  if (it != g_cache.end()) return it->second;
  if (g_cache.size() >= (1u << 14)) g_cache.clear();
  auto exe = std::make_shared<Executable>(ProgramIndex{code});
  g_cache.emplace(code, exe);
  return exe;
}

struct Frame {
  std::shared_ptr<Executable> exe;
  std::uint64_t pc = 0;
  std::vector<Nat> regs;
  std::uint64_t own_limit = UINT64_MAX;
  std::uint64_t cap = UINT64_MAX;
  std::uint32_t ret_slot = 0;
  bool bounded = false;  // pushed by E rather than V
};

Frame make_frame(const Nat& code, const Nat& input) {
  Frame f;
  f.exe = executable(code);
  f.regs.resize(std::max<std::size_t>(1, f.exe->slot_count()));
  f.regs[0] = input;
  return f;
}

EvalResult execute(const ProgramIndex& e, const Nat& x, std::uint64_t limit) {
  std::vector<Frame> frames;
  frames.push_back(make_frame(e.code, x));
  frames.back().own_limit = limit;
  frames.back().cap = limit;
  std::uint64_t steps = 0;

  for (;;) {
    Frame& f = frames.back();
    if (f.pc >= f.exe->length()) {
      Nat v = std::move(f.regs[0]);
      bool bounded = f.bounded;
      std::uint32_t ret = f.ret_slot;
      frames.pop_back();
      if (frames.empty()) return {std::move(v), steps, false};
      Frame& parent = frames.back();
      if (bounded) v += 1;
      parent.regs[ret] = std::move(v);
      continue;
    }

    const Decoded& ins = f.exe->at(f.pc);
    if (ins.max_slot >= f.regs.size()) f.regs.resize(ins.max_slot + 1);
    auto& r = f.regs;
    const auto& s = ins.slot;
    const std::uint64_t remaining = f.cap - steps;
    bool out_of_steps = false;

    switch (ins.op) {
      case Op::Zero:
      case Op::Succ:
      case Op::Transfer:
      case Op::Jump:
      case Op::Left:
      case Op::Right:
      case Op::Halve:
      case Op::Bit:
        if (remaining < 1) {
          out_of_steps = true;
          break;
        }
        ++steps;
        switch (ins.op) {
          case Op::Zero: r[s[0]] = 0; break;
          case Op::Succ: ++r[s[0]]; break;
          case Op::Transfer: r[s[1]] = r[s[0]]; break;
          case Op::Left: r[s[1]] = unpair_left(r[s[0]]); break;
          case Op::Right: r[s[1]] = unpair_right(r[s[0]]); break;
          case Op::Halve: r[s[1]] = r[s[0]] >> 1; break;
          case Op::Bit: {
            auto i = to_u64(r[s[1]]);
            r[s[2]] = (i && dn_contains(r[s[0]], *i)) ? 1 : 0;
            break;
          }
          case Op::Jump:
            if (r[s[0]] == r[s[1]]) {
              if (ins.target == f.pc) {
                // Self-jump on equal registers: the state never changes again.
                bool inside_eval = false;
                for (const auto& fr : frames) inside_eval = inside_eval || fr.bounded;
                if (!inside_eval) return {std::nullopt, f.cap, true};
                steps = f.cap;
                out_of_steps = true;
                break;
              }
              f.pc = ins.target == kHalt ? kHalt : ins.target;
              continue;
            }
            break;
          default: break;
        }
        if (!out_of_steps) ++f.pc;
        break;

      case Op::Const:
        if (ins.const_cost > remaining) {
          out_of_steps = true;
          break;
        }
        steps += ins.const_cost;
        r[s[0]] = ins.constant;
        ++f.pc;
        break;

      case Op::Pair:
      case Op::Add:
      case Op::Smn: {
        Nat v = ins.op == Op::Pair  ? pair(r[s[0]], r[s[1]])
                : ins.op == Op::Add ? Nat(r[s[0]] + r[s[1]])
                                    : smn(ProgramIndex{r[s[0]]}, r[s[1]]).code;
        auto cost = value_cost(v);
        if (cost > remaining) {
          out_of_steps = true;
          break;
        }
        steps += cost;
        r[s[2]] = std::move(v);
        ++f.pc;
        break;
      }

      case Op::Native: {
        if (remaining < 1) {
          out_of_steps = true;
          break;
        }
        BuiltinResult res{0, 0};
        auto id = to_u64(r[s[0]]);
        if (const Builtin* b = id ? find_builtin(*id) : nullptr) res = (*b)(r[s[1]]);
        auto cost = sat_add(1, res.cost);
        if (cost > remaining) {
          out_of_steps = true;
          break;
        }
        steps += cost;
        r[s[2]] = std::move(res.value);
        ++f.pc;
        break;
      }

      case Op::Eval:
      case Op::Call: {
        if (remaining < 1) {
          out_of_steps = true;
          break;
        }
        ++steps;
        const bool bounded = ins.op == Op::Eval;
        Frame callee = make_frame(r[s[0]], r[s[1]]);
        callee.bounded = bounded;
        callee.ret_slot = bounded ? s[3] : s[2];
        callee.own_limit = bounded ? sat_add(steps, saturate_u64(r[s[2]])) : UINT64_MAX;
        callee.cap = std::min(callee.own_limit, f.cap);
        ++f.pc;
        frames.push_back(std::move(callee));
        break;
      }
    }

    if (out_of_steps) {
      // Unwind to the innermost frame whose own limit is the binding one.
      const std::uint64_t cap = frames.back().cap;
      std::size_t owner = frames.size() - 1;
      while (owner > 0 && !(frames[owner].bounded && frames[owner].own_limit == cap)) --owner;
      steps = cap;
      if (owner == 0) return EvalResult::exhausted(steps);
      std::uint32_t ret = frames[owner].ret_slot;
      frames.resize(owner);
      frames.back().regs[ret] = 0;
    }
  }
}

}  // namespace

EvalResult run(const ProgramIndex& e, const Nat& x, StepBudget s) {
  if (x > s.steps) return EvalResult::exhausted(0);
  return execute(e, x, s.steps);
}

EvalResult run_steps(const ProgramIndex& e, const Nat& x, std::uint64_t steps) {
  return execute(e, x, steps);
}

FinSet we_stage_set(const ProgramIndex& e, std::uint64_t s) {
  FinSet out;
  for (std::uint64_t x = 0; x <= s; ++x)
    if (run(e, x, {s}).halted()) out.insert(x);
  return out;
}

Nat we_stage(const ProgramIndex& e, std::uint64_t s) { return dn_encode(we_stage_set(e, s)); }

std::set<Nat> image_stage(const ProgramIndex& e, std::uint64_t s) {
  std::set<Nat> out;
  for (std::uint64_t x = 0; x <= s; ++x) {
    auto r = run(e, x, {s});
    if (r.halted()) out.insert(*r.value);
  }
  return out;
}

Nat image_stage_code(const ProgramIndex& e, std::uint64_t s) {
  FinSet f;
  for (const auto& v : image_stage(e, s)) {
    auto u = to_u64(v);
    if (!u || *u > (std::uint64_t{1} << 32)) throw std::range_error("image value too large for a D-code");
    f.insert(*u);
  }
  return dn_encode(f);
}

void clear_program_cache() { g_cache.clear(); }

}  // namespace etw::kernel
