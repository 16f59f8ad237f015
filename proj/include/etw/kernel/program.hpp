#pragma once

#include "etw/nat.hpp"

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace etw::kernel {

/// Instruction opcodes. The first four form the classic unbounded register
/// machine; the rest are macro-instructions for total computable operations
/// (and universal calls) that would otherwise cost as many steps as the
/// numbers they manipulate.
enum class Op : std::uint8_t {
  Zero,      // Z r        r := 0
  Succ,      // S r        r := r + 1
  Transfer,  // T a d      d := a
  Jump,      // J a b q    if a == b goto q (1-based; past the end halts)
  Const,     // C d k      d := k
  Pair,      // P a b d    d := pair(a, b)
  Left,      // L a d      d := first(unpair(a))
  Right,     // R a d      d := second(unpair(a))
  Add,       // A a b d    d := a + b
  Halve,     // H a d      d := a / 2
  Bit,       // B a i d    d := bit i of a
  Eval,      // E e x t d  d := 0 if phi_e(x) needs more than t steps, else phi_e(x)+1
  Call,      // V e x d    d := phi_e(x)
  Smn,       // K e y d    d := smn(e, y)
  Native,    // N k a d    d := builtin_k(a)
};

inline constexpr std::size_t kOpCount = 15;

/// Operand roles, used by the coding (registers and targets are stored
/// shifted down by one).
enum class Operand : std::uint8_t { Reg, Target, Constant };

struct OpInfo {
  char mnemonic;
  std::size_t arity;
  std::array<Operand, 4> roles;
};

const OpInfo& op_info(Op op);

/// One instruction. Register operands are 1-based, jump targets are 1-based,
/// constants are arbitrary naturals.
struct Instruction {
  Op op = Op::Zero;
  std::array<Nat, 4> args{};

  friend bool operator==(const Instruction&, const Instruction&) = default;
};

struct Program {
  std::vector<Instruction> code;

  friend bool operator==(const Program&, const Program&) = default;
};

/// Gödel number of a program.
struct ProgramIndex {
  Nat code;

  friend bool operator==(const ProgramIndex&, const ProgramIndex&) = default;
  friend auto operator<=>(const ProgramIndex& a, const ProgramIndex& b) {
    return a.code.compare(b.code) <=> 0;
  }
};

// encode_program and decode_program are mutually inverse bijections between
// the naturals and programs. Index 0 is the empty program.
Nat encode_instruction(const Instruction& ins);
Instruction decode_instruction(const Nat& n);
ProgramIndex encode_program(const Program& p);

/// Materializes a program. Throws std::length_error for indices whose
/// program is longer than kMaxMaterializedLength; the interpreter decodes
/// those lazily instead.
Program decode_program(const ProgramIndex& e);
inline constexpr std::uint64_t kMaxMaterializedLength = std::uint64_t{1} << 20;

/// Program length encoded by an index, without decoding the body.
Nat program_length(const ProgramIndex& e);

/// Decodes the instruction at `pos` (0-based) of a program of length `len`
/// with tuple body `body`, touching only the path to that leaf.
Instruction fetch_instruction(const Nat& body, const Nat& len, const Nat& pos);

/// Splits an index into (length, tuple body); index must be nonzero.
std::pair<Nat, Nat> split_index(const ProgramIndex& e);

/// Balanced-tree Cantor coding of a fixed-length tuple. Bit length grows
/// linearly with the tuple length.
Nat encode_tuple(const std::vector<Nat>& xs);
std::vector<Nat> decode_tuple(const Nat& n, std::size_t len);

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Parses program text: one instruction per line, e.g. `J 1 2 5`;
/// case-insensitive; `#` starts a comment. `first_line` offsets error lines.
Program parse_program(std::string_view text, std::size_t first_line = 1);
std::string format_program(const Program& p);

}  // namespace etw::kernel
