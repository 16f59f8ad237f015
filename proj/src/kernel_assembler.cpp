#include "etw/kernel/assembler.hpp"

#include <stdexcept>

namespace etw::kernel {

namespace {
constexpr std::size_t kUnbound = static_cast<std::size_t>(-1);
}

Assembler::Label Assembler::label() {
  bound_.push_back(kUnbound);
  return bound_.size() - 1;
}

void Assembler::bind(Label l) { bound_.at(l) = code_.size(); }

void Assembler::emit(Op op, std::initializer_list<Reg> regs) {
  Pending p;
  p.ins.op = op;
  std::size_t i = 0;
  for (Reg r : regs) p.ins.args[i++] = r;
  code_.push_back(std::move(p));
}

void Assembler::jump_if_equal(Reg a, Reg b, Label target) {
  Pending p;
  p.ins.op = Op::Jump;
  p.ins.args[0] = a;
  p.ins.args[1] = b;
  p.target = target;
  p.has_target = true;
  code_.push_back(std::move(p));
}

void Assembler::load(Reg dst, const Nat& k) {
  Pending p;
  p.ins.op = Op::Const;
  p.ins.args[0] = dst;
  p.ins.args[1] = k;
  code_.push_back(std::move(p));
}

Program Assembler::build() const {
  Program prog;
  prog.code.reserve(code_.size());
  for (const auto& p : code_) {
    Instruction ins = p.ins;
    if (p.has_target) {
      if (p.target == kHaltLabel) {
        ins.args[2] = code_.size() + 1;
      } else {
        std::size_t pos = bound_.at(p.target);
        if (pos == kUnbound) throw std::logic_error("Assembler: jump to unbound label");
        ins.args[2] = pos + 1;
      }
    }
    prog.code.push_back(std::move(ins));
  }
  return prog;
}

}  // namespace etw::kernel
