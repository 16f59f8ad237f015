#include "etw/kernel/smn.hpp"

#include "etw/kernel/assembler.hpp"

namespace etw::kernel {

ProgramIndex smn(const ProgramIndex& e, const Nat& y) {
  Assembler a;
  a.load(2, e.code);
  a.load(3, y);
  a.pair(3, 1, 1);
  a.call(2, 1, 1);
  return a.index();
}

namespace {

// On pair(v, x): t := phi_v(v); return phi_t(x).
ProgramIndex diagonal_program() {
  Assembler a;
  a.left(1, 2);
  a.right(1, 3);
  a.call(2, 2, 4);
  a.call(4, 3, 1);
  return a.index();
}

}  // namespace

ProgramIndex fixpoint(const ProgramIndex& f) {
  static const ProgramIndex diag = diagonal_program();
  // v: on u, return phi_f(smn(diag, u)). Then e = smn(diag, v) satisfies
  // phi_e(x) = phi_{phi_v(v)}(x) = phi_{phi_f(e)}(x).
  Assembler a;
  a.load(2, diag.code);
  a.smn(2, 1, 3);
  a.load(4, f.code);
  a.call(4, 3, 1);
  return smn(diag, a.index().code);
}

}  // namespace etw::kernel
