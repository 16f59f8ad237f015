#include "etw/domains/domain.hpp"

#include <memory>
#include <stdexcept>

namespace etw::domains {

Domain Domain::explicit_domain(std::vector<std::string> names,
                               const std::vector<std::pair<std::size_t, std::size_t>>& leq) {
  const std::size_t k = names.size();
  if (k == 0) throw std::invalid_argument("domain needs at least the bottom element");
  Domain d;
  d.names_ = std::move(names);
  d.up_.assign(k, boost::dynamic_bitset<>(k));
  for (std::size_t i = 0; i < k; ++i) d.up_[i].set(i);
  for (auto [i, j] : leq) {
    if (i >= k || j >= k) throw std::invalid_argument("leq pair out of range");
    d.up_[i].set(j);
  }
  for (std::size_t m = 0; m < k; ++m)
    for (std::size_t i = 0; i < k; ++i)
      if (d.up_[i].test(m)) d.up_[i] |= d.up_[m];
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (d.up_[i].test(j) && d.up_[j].test(i))
        throw std::invalid_argument("leq is not antisymmetric: " + d.names_[i] + ", " + d.names_[j]);
  if (!d.up_[0].all()) throw std::invalid_argument("element 0 (" + d.names_[0] + ") is not least");
  return d;
}

Domain Domain::program_domain(ProgramIndex waybelow) {
  Domain d;
  d.kind_ = Kind::Program;
  d.waybelow_ = std::move(waybelow);
  return d;
}

FinSet Domain::approx_set(std::size_t a) const {
  FinSet out;
  for (std::size_t n = 0; n < size(); ++n)
    if (way_below(n, a)) out.insert(n);
  return out;
}

numberings::CeSet Domain::raw_way_below() const {
  if (kind_ == Kind::Program) return numberings::CeSet(waybelow_);
  FinSet codes;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j)
      if (way_below(i, j)) codes.insert(pair(std::uint64_t{i}, std::uint64_t{j}));
  return numberings::CeSet::finite(codes);
}

Nat Domain::code() const {
  if (kind_ == Kind::Program) return pair(Nat(1), waybelow_.code);
  const std::size_t k = size();
  FinSet bits;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (leq(i, j)) bits.insert(i * k + j);
  return pair(Nat(0), pair(Nat(k), dn_encode(bits)));
}

Domain Domain::from_code(const Nat& code) {
  auto [tag, body] = unpair(code);
  if (tag == 1) return program_domain(ProgramIndex{body});
  if (tag != 0) throw std::invalid_argument("bad domain code");
  auto [kn, m] = unpair(body);
  auto k = to_u64(kn);
  if (!k || *k == 0 || *k > 4096) throw std::invalid_argument("bad domain size in code");
  std::vector<std::string> names;
  for (std::uint64_t i = 0; i < *k; ++i) names.push_back(std::to_string(i));
  std::vector<std::pair<std::size_t, std::size_t>> leq;
  for (auto b : dn_decode(m))
    if (b < *k * *k) leq.emplace_back(b / *k, b % *k);
  return explicit_domain(std::move(names), leq);
}

std::vector<Domain> enumerate_domains(std::size_t max_elements) {
  std::vector<Domain> out;
  for (std::size_t k = 1; k <= max_elements; ++k) {
    const std::size_t m = k - 1;  // elements above ⊥ are 1..m
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t i = 1; i <= m; ++i)
      for (std::size_t j = i + 1; j <= m; ++j) slots.emplace_back(i, j);
    std::uint64_t total = 1;
    for (std::size_t s = 0; s < slots.size(); ++s) total *= 3;
    for (std::uint64_t code = 0; code < total; ++code) {
      // Slot state 0: incomparable, 1: i < j, 2: j < i.
      std::vector<std::uint32_t> below(k, 0);  // below[j] = {i : i < j}
      std::uint64_t c = code;
      for (auto [i, j] : slots) {
        auto st = c % 3;
        c /= 3;
        if (st == 1) below[j] |= 1u << i;
        if (st == 2) below[i] |= 1u << j;
      }
      bool transitive = true;
      for (std::size_t j = 1; j <= m && transitive; ++j)
        for (std::size_t i = 1; i <= m; ++i)
          if ((below[j] >> i & 1) && (below[i] & ~below[j])) {
            transitive = false;
            break;
          }
      if (!transitive) continue;
      std::vector<std::string> names;
      for (std::size_t i = 0; i < k; ++i) names.push_back(std::to_string(i));
      std::vector<std::pair<std::size_t, std::size_t>> leq;
      for (std::size_t j = 1; j <= m; ++j) {
        leq.emplace_back(0, j);
        for (std::size_t i = 1; i <= m; ++i)
          if (below[j] >> i & 1) leq.emplace_back(i, j);
      }
      out.push_back(Domain::explicit_domain(std::move(names), leq));
    }
  }
  return out;
}

std::size_t interpolate(const Domain& d, const FinSet& m, std::size_t y) {
  if (y >= d.size()) throw std::out_of_range("interpolate: y is not a basis index");
  for (auto i : m)
    if (i >= d.size() || !d.way_below(i, y))
      throw std::domain_error("interpolate: element " + std::to_string(i) + " is not way below " + std::to_string(y));
  for (std::size_t x = 0; x < d.size(); ++x) {
    if (!d.way_below(x, y)) continue;
    bool ok = true;
    for (auto i : m) ok = ok && d.way_below(i, x);
    if (ok) return x;
  }
  return y;  // unreachable: y itself qualifies
}

spaces::PointSet scott_open(const Domain& d, std::size_t n) {
  if (n >= d.size()) throw std::out_of_range("scott_open: n is not a basis index");
  spaces::PointSet out(d.size());
  for (std::size_t x = 0; x < d.size(); ++x)
    if (d.way_below(n, x)) out.set(x);
  return out;
}

DomainSpace domain_to_modular(const Domain& d) {
  if (d.kind() != Domain::Kind::Explicit) throw std::invalid_argument("domain_to_modular needs an explicit domain");
  const std::size_t k = d.size();
  auto opens = std::make_shared<std::vector<spaces::PointSet>>();
  for (std::size_t n = 0; n < k; ++n) opens->push_back(scott_open(d, n));

  DomainSpace ds;
  auto& x = ds.space;
  x.name = "Scott";
  x.points = d.names();
  // Index k names U_⊥ = X, the one Scott open that α(0) = ∅ leaves out.
  x.alpha = [opens, k](std::uint64_t n) {
    if (n == 0 || n > k) return spaces::PointSet(k);
    return (*opens)[n == k ? 0 : n];
  };
  for (std::size_t n = 1; n <= k; ++n) x.basis.push_back(n);
  x.empty_index = 0;
  // U_i ∩ U_j is the union of U_c over the common upper bounds c, listed in
  // index order; positions past the last one give the empty index.
  auto element = [k](std::uint64_t n) -> std::size_t { return n == k ? 0 : n; };
  auto bounds = std::make_shared<std::vector<std::vector<std::uint64_t>>>((k + 1) * (k + 1));
  for (std::size_t i = 1; i <= k; ++i)
    for (std::size_t j = 1; j <= k; ++j)
      for (std::size_t c = 1; c <= k; ++c)
        if (d.way_below(element(i), element(c)) && d.way_below(element(j), element(c)))
          (*bounds)[i * (k + 1) + j].push_back(c);
  x.g = [bounds, k](std::uint64_t i, std::uint64_t j, std::uint64_t n) -> std::uint64_t {
    if (i == 0 || j == 0 || i > k || j > k) return 0;
    const auto& b = (*bounds)[i * (k + 1) + j];
    return n < b.size() ? b[n] : 0;
  };
  x.g_span = k;

  for (std::size_t n = 0; n < k; ++n) {
    ds.witness.b.push_back(n);
    ds.witness.o.push_back(FinSet{n == 0 ? k : n});
  }
  ds.witness.b.push_back(0);
  ds.witness.o.push_back(FinSet{k});
  return ds;
}

}  // namespace etw::domains
