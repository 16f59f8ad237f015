#include "etw/trees/sequence.hpp"

#include <sstream>

namespace etw::trees {

namespace mp = boost::multiprecision;

Nat delta_encode(const FiniteSeq& x) {
  if (x.empty()) return 0;
  Nat n = 1;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i > 0) n <<= 1;
    n <<= x[i];
    n += (Nat(1) << x[i]) - 1;
  }
  return n;
}

FiniteSeq delta_decode(const Nat& n) {
  FiniteSeq out;
  if (n.is_zero()) return out;
  std::uint64_t run = 0;
  for (std::uint64_t i = mp::msb(n); i-- > 0;) {
    if (mp::bit_test(n, i)) {
      ++run;
    } else {
      out.push_back(run);
      run = 0;
    }
  }
  out.push_back(run);
  return out;
}

std::optional<std::uint64_t> delta_code(const FiniteSeq& x) {
  std::uint64_t bits = x.empty() ? 0 : x.size();
  for (auto a : x) {
    if (a > 64 || bits + a > 64) return std::nullopt;
    bits += a;
  }
  return to_u64(delta_encode(x));
}

bool prefix_leq(const FiniteSeq& x, const FiniteSeq& y) {
  return x.size() <= y.size() && std::equal(x.begin(), x.end(), y.begin());
}

namespace {

// Whether x is smaller than y at their first difference (both defined there).
bool smaller_at_difference(const FiniteSeq& x, const FiniteSeq& y) {
  auto n = std::min(x.size(), y.size());
  for (std::size_t i = 0; i < n; ++i)
    if (x[i] != y[i]) return x[i] < y[i];
  return false;
}

}  // namespace

bool lex_leq(const FiniteSeq& x, const FiniteSeq& y) { return prefix_leq(x, y) || smaller_at_difference(x, y); }

bool kb_leq(const FiniteSeq& x, const FiniteSeq& y) { return prefix_leq(y, x) || smaller_at_difference(x, y); }

std::string format_seq(const FiniteSeq& x) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? " " : "") << x[i];
  os << ')';
  return os.str();
}

std::vector<FiniteSeq> prefixes(const FiniteSeq& x) {
  std::vector<FiniteSeq> out;
  for (std::size_t k = 0; k <= x.size(); ++k) out.emplace_back(x.begin(), x.begin() + k);
  return out;
}

}  // namespace etw::trees
