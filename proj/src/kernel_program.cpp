#include "etw/kernel/program.hpp"

#include <cctype>
#include <sstream>

namespace etw::kernel {

namespace {

using enum Operand;

const std::array<OpInfo, kOpCount> kOps{{
    {'Z', 1, {Reg}},
    {'S', 1, {Reg}},
    {'T', 2, {Reg, Reg}},
    {'J', 3, {Reg, Reg, Target}},
    {'C', 2, {Reg, Constant}},
    {'P', 3, {Reg, Reg, Reg}},
    {'L', 2, {Reg, Reg}},
    {'R', 2, {Reg, Reg}},
    {'A', 3, {Reg, Reg, Reg}},
    {'H', 2, {Reg, Reg}},
    {'B', 3, {Reg, Reg, Reg}},
    {'E', 4, {Reg, Reg, Reg, Reg}},
    {'V', 3, {Reg, Reg, Reg}},
    {'K', 3, {Reg, Reg, Reg}},
    {'N', 3, {Reg, Reg, Reg}},
}};

Nat encode_range(const std::vector<Nat>& xs, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return xs[lo];
  std::size_t mid = lo + (hi - lo + 1) / 2;
  return compact_pair(encode_range(xs, lo, mid), encode_range(xs, mid, hi));
}

void decode_range(const Nat& n, std::vector<Nat>& out, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) {
    out[lo] = n;
    return;
  }
  std::size_t mid = lo + (hi - lo + 1) / 2;
  auto [a, b] = compact_unpair(n);
  decode_range(a, out, lo, mid);
  decode_range(b, out, mid, hi);
}

}  // namespace

const OpInfo& op_info(Op op) { return kOps[static_cast<std::size_t>(op)]; }

Nat encode_tuple(const std::vector<Nat>& xs) {
  if (xs.empty()) return 0;
  return encode_range(xs, 0, xs.size());
}

std::vector<Nat> decode_tuple(const Nat& n, std::size_t len) {
  std::vector<Nat> out(len);
  if (len == 0) return out;
  decode_range(n, out, 0, len);
  return out;
}

Nat encode_instruction(const Instruction& ins) {
  const auto& info = op_info(ins.op);
  std::vector<Nat> raw(info.arity);
  for (std::size_t i = 0; i < info.arity; ++i) {
    const Nat& a = ins.args[i];
    raw[i] = info.roles[i] == Constant ? a : Nat(a - 1);
  }
  return encode_tuple(raw) * kOpCount + static_cast<unsigned>(ins.op);
}

Instruction decode_instruction(const Nat& n) {
  Instruction ins;
  ins.op = static_cast<Op>(static_cast<unsigned>(n % kOpCount));
  const auto& info = op_info(ins.op);
  auto raw = decode_tuple(n / kOpCount, info.arity);
  for (std::size_t i = 0; i < info.arity; ++i)
    ins.args[i] = info.roles[i] == Constant ? raw[i] : Nat(raw[i] + 1);
  return ins;
}

ProgramIndex encode_program(const Program& p) {
  if (p.code.empty()) return {0};
  std::vector<Nat> codes;
  codes.reserve(p.code.size());
  for (const auto& ins : p.code) {
    const auto& info = op_info(ins.op);
    for (std::size_t i = 0; i < info.arity; ++i)
      if (info.roles[i] != Constant && ins.args[i] < 1)
        throw std::invalid_argument("encode_program: register and target operands must be >= 1");
    codes.push_back(encode_instruction(ins));
  }
  return {compact_pair(Nat(p.code.size() - 1), encode_tuple(codes)) + 1};
}

std::pair<Nat, Nat> split_index(const ProgramIndex& e) {
  auto [len_minus_one, body] = compact_unpair(Nat(e.code - 1));
  return {len_minus_one + 1, body};
}

Nat program_length(const ProgramIndex& e) {
  if (e.code.is_zero()) return 0;
  return split_index(e).first;
}

Instruction fetch_instruction(const Nat& body, const Nat& len, const Nat& pos) {
  Nat n = body, lo = 0, hi = len;
  while (hi - lo > 1) {
    if (n.is_zero()) break;  // every leaf below a zero node is zero
    Nat mid = lo + (hi - lo + 1) / 2;
    auto [a, b] = compact_unpair(n);
    if (pos < mid) {
      n = std::move(a);
      hi = std::move(mid);
    } else {
      n = std::move(b);
      lo = std::move(mid);
    }
  }
  return decode_instruction(n);
}

Program decode_program(const ProgramIndex& e) {
  Program p;
  if (e.code.is_zero()) return p;
  auto [len, body] = split_index(e);
  if (len > kMaxMaterializedLength)
    throw std::length_error("decode_program: program too long to materialize");
  auto codes = decode_tuple(body, len.convert_to<std::size_t>());
  p.code.reserve(codes.size());
  for (const auto& c : codes) p.code.push_back(decode_instruction(c));
  return p;
}

Program parse_program(std::string_view text, std::size_t first_line) {
  Program p;
  std::size_t line_no = first_line;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(pos, end - pos));
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream is(line);
    std::string mnemonic;
    if (is >> mnemonic) {
      if (mnemonic.size() != 1) throw ParseError(line_no, "unknown instruction '" + mnemonic + "'");
      char m = static_cast<char>(std::toupper(static_cast<unsigned char>(mnemonic[0])));
      std::size_t op_index = kOpCount;
      for (std::size_t i = 0; i < kOpCount; ++i)
        if (kOps[i].mnemonic == m) op_index = i;
      if (op_index == kOpCount) throw ParseError(line_no, "unknown instruction '" + mnemonic + "'");
      Instruction ins;
      ins.op = static_cast<Op>(op_index);
      const auto& info = kOps[op_index];
      for (std::size_t i = 0; i < info.arity; ++i) {
        std::string tok;
        if (!(is >> tok)) throw ParseError(line_no, std::string("too few operands for ") + m);
        for (char c : tok)
          if (!std::isdigit(static_cast<unsigned char>(c)))
            throw ParseError(line_no, "operand '" + tok + "' is not a natural number");
        ins.args[i] = Nat(tok);
        if (info.roles[i] != Constant && ins.args[i] < 1)
          throw ParseError(line_no, "registers and jump targets are 1-based");
      }
      std::string extra;
      if (is >> extra) throw ParseError(line_no, "trailing operand '" + extra + "'");
      p.code.push_back(std::move(ins));
    }
    if (end == text.size()) break;
    pos = end + 1;
    ++line_no;
  }
  return p;
}

std::string format_program(const Program& p) {
  std::ostringstream os;
  for (const auto& ins : p.code) {
    const auto& info = op_info(ins.op);
    os << info.mnemonic;
    for (std::size_t i = 0; i < info.arity; ++i) os << ' ' << ins.args[i];
    os << '\n';
  }
  return os.str();
}

}  // namespace etw::kernel
