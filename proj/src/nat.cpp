#include "etw/nat.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace etw {

namespace mp = boost::multiprecision;

Nat pair(const Nat& x, const Nat& y) {
  Nat s = x + y;
  return s * (s + 1) / 2 + y;
}

std::pair<Nat, Nat> unpair(const Nat& n) {
  if (limb_count(n) <= 1) {
    auto [x, y] = unpair(n.convert_to<std::uint64_t>());
    return {Nat(x), Nat(y)};
  }
  // w = floor((sqrt(8n+1) - 1) / 2)
  Nat w = (mp::sqrt(Nat(8 * n + 1)) - 1) / 2;
  Nat t = w * (w + 1) / 2;
  Nat y = n - t;
  return {w - y, y};
}

namespace {

// Number of pairs whose strings have total length below m.
Nat compact_offset(std::uint64_t m) {
  if (m == 0) return 0;
  return Nat(m - 1) * (Nat(1) << m) + 1;
}

}  // namespace

Nat compact_pair(const Nat& x, const Nat& y) {
  Nat a = x + 1, b = y + 1;
  std::uint64_t lu = mp::msb(a), lv = mp::msb(b);
  Nat u = a - (Nat(1) << lu), v = b - (Nat(1) << lv);
  std::uint64_t m = lu + lv;
  return compact_offset(m) + (Nat(lu) << m) + (u << lv) + v;
}

std::pair<Nat, Nat> compact_unpair(const Nat& z) {
  if (z.is_zero()) return {0, 0};
  std::uint64_t bits = mp::msb(z);
  std::uint64_t m = bits > 0 ? bits - std::min<std::uint64_t>(bits, mp::msb(Nat(bits))) : 0;
  while (m > 0 && compact_offset(m) > z) --m;
  while (compact_offset(m + 1) <= z) ++m;
  Nat q = z - compact_offset(m);
  Nat lu_n = q >> m;
  std::uint64_t lu = lu_n.convert_to<std::uint64_t>(), lv = m - lu;
  Nat r = q - (lu_n << m);
  Nat u = r >> lv;
  Nat v = r - (u << lv);
  return {(Nat(1) << lu) + u - 1, (Nat(1) << lv) + v - 1};
}

Nat unpair_left(const Nat& n) { return unpair(n).first; }
Nat unpair_right(const Nat& n) { return unpair(n).second; }

std::uint64_t pair(std::uint64_t x, std::uint64_t y) {
  unsigned __int128 s = static_cast<unsigned __int128>(x) + y;
  unsigned __int128 v = s * (s + 1) / 2 + y;
  if (v > UINT64_MAX) throw std::overflow_error("pair: result exceeds 64 bits");
  return static_cast<std::uint64_t>(v);
}

std::pair<std::uint64_t, std::uint64_t> unpair(std::uint64_t n) {
  using u128 = unsigned __int128;
  auto tri = [](u128 w) { return w * (w + 1) / 2; };
  u128 w = static_cast<u128>((std::sqrt(8.0L * static_cast<long double>(n) + 1.0L) - 1.0L) / 2.0L);
  while (tri(w) > n) --w;
  while (tri(w + 1) <= n) ++w;
  auto y = static_cast<std::uint64_t>(n - tri(w));
  return {static_cast<std::uint64_t>(w) - y, y};
}

FinSet dn_decode(const Nat& n) {
  FinSet out;
  if (n.is_zero()) return out;
  std::uint64_t top = mp::msb(n);
  for (std::uint64_t i = mp::lsb(n); i <= top; ++i)
    if (mp::bit_test(n, i)) out.insert(i);
  return out;
}

Nat dn_encode(const FinSet& f) {
  Nat n = 0;
  for (auto x : f) mp::bit_set(n, x);
  return n;
}

bool dn_contains(const Nat& n, std::uint64_t x) {
  if (n.is_zero()) return false;
  if (x > mp::msb(n)) return false;
  return mp::bit_test(n, x);
}

std::string format_set(const FinSet& f) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (auto x : f) {
    if (!first) os << ',';
    os << x;
    first = false;
  }
  os << '}';
  return os.str();
}

}  // namespace etw
