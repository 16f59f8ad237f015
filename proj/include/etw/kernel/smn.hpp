#pragma once

#include "etw/kernel/program.hpp"

namespace etw::kernel {

/// s-m-n: an index e' with phi_e'(x) = phi_e(pair(y, x)). Built purely
/// syntactically as `C 2 e; C 3 y; P 3 1 1; V 2 1 1`; injective in y.
ProgramIndex smn(const ProgramIndex& e, const Nat& y);

/// Kleene recursion theorem: an index e with phi_e = phi_{phi_f(e)}.
/// f need only be total on the index it is applied to; no program is run.
ProgramIndex fixpoint(const ProgramIndex& f);

}  // namespace etw::kernel
