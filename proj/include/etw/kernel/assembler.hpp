#pragma once

#include "etw/kernel/program.hpp"

#include <cstddef>
#include <vector>

namespace etw::kernel {

/// Small builder for register-machine programs with symbolic jump labels.
class Assembler {
 public:
  using Label = std::size_t;
  using Reg = std::uint64_t;

  Label label();
  void bind(Label l);
  /// Label that halts the program when jumped to.
  Label halt() const { return kHaltLabel; }

  void zero(Reg r) { emit(Op::Zero, {r}); }
  void succ(Reg r) { emit(Op::Succ, {r}); }
  void copy(Reg src, Reg dst) { emit(Op::Transfer, {src, dst}); }
  void jump_if_equal(Reg a, Reg b, Label target);
  void jump(Label target) { jump_if_equal(1, 1, target); }
  void load(Reg dst, const Nat& k);
  void pair(Reg a, Reg b, Reg dst) { emit(Op::Pair, {a, b, dst}); }
  void left(Reg a, Reg dst) { emit(Op::Left, {a, dst}); }
  void right(Reg a, Reg dst) { emit(Op::Right, {a, dst}); }
  void add(Reg a, Reg b, Reg dst) { emit(Op::Add, {a, b, dst}); }
  void halve(Reg a, Reg dst) { emit(Op::Halve, {a, dst}); }
  void bit(Reg a, Reg i, Reg dst) { emit(Op::Bit, {a, i, dst}); }
  void eval(Reg e, Reg x, Reg t, Reg dst) { emit(Op::Eval, {e, x, t, dst}); }
  void call(Reg e, Reg x, Reg dst) { emit(Op::Call, {e, x, dst}); }
  void smn(Reg e, Reg y, Reg dst) { emit(Op::Smn, {e, y, dst}); }
  void native(Reg id, Reg arg, Reg dst) { emit(Op::Native, {id, arg, dst}); }

  Program build() const;
  ProgramIndex index() const { return encode_program(build()); }

 private:
  static constexpr Label kHaltLabel = static_cast<Label>(-1);

  void emit(Op op, std::initializer_list<Reg> regs);

  struct Pending {
    Instruction ins;
    Label target = kHaltLabel;
    bool has_target = false;
  };
  std::vector<Pending> code_;
  std::vector<std::size_t> bound_;  // label -> instruction position, npos if unbound
};

}  // namespace etw::kernel
