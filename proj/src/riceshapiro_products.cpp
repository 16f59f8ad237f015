#include "etw/riceshapiro/riceshapiro.hpp"

#include "etw/kernel/assembler.hpp"
#include "etw/kernel/machine.hpp"

#include <algorithm>

namespace etw::riceshapiro {

using kernel::Assembler;

namespace {

// On pair(n, x): halt once pair(x, y) (or pair(y, x) when `second`) is seen
// in W_n within t steps for some y <= t.
ProgramIndex projection_enumerator(bool second) {
  Assembler a;
  auto outer = a.label(), inner = a.label(), skip = a.label(), next_t = a.label();
  a.left(1, 2);
  a.right(1, 3);
  a.zero(4);
  a.zero(9);
  a.bind(outer);
  a.zero(5);
  a.bind(inner);
  if (second)
    a.pair(5, 3, 6);
  else
    a.pair(3, 5, 6);
  a.eval(2, 6, 4, 7);
  a.jump_if_equal(7, 9, skip);
  a.jump(a.halt());
  a.bind(skip);
  a.jump_if_equal(5, 4, next_t);
  a.succ(5);
  a.jump(inner);
  a.bind(next_t);
  a.succ(4);
  a.jump(outer);
  return a.index();
}

ProgramIndex smn_transformer(const ProgramIndex& body) {
  Assembler a;
  a.load(2, body.code);
  a.smn(2, 1, 1);
  return a.index();
}

}  // namespace

FinSet product_set(const FinSet& a, const FinSet& b) {
  FinSet out;
  for (auto x : a)
    for (auto y : b) out.insert(pair(x, y));
  return out;
}

ProductFamily product_family(const numberings::WnFamily& s) {
  ProductFamily pf;
  pf.base = s;
  const auto a_body = projection_enumerator(false), b_body = projection_enumerator(true);
  pf.a = smn_transformer(a_body);
  pf.b = smn_transformer(b_body);

  // On pair(pair(i, j), z): halt iff unpair(z) ∈ W_i × W_j.
  Assembler prod;
  prod.left(1, 2);
  prod.right(1, 3);
  prod.left(2, 4);
  prod.right(2, 5);
  prod.left(3, 6);
  prod.right(3, 7);
  prod.call(4, 6, 8);
  prod.call(5, 7, 8);

  Assembler st;
  st.copy(1, 2);
  st.load(3, a_body.code);
  st.smn(3, 2, 4);
  st.load(5, s.sigma.code);
  st.call(5, 4, 6);
  st.load(3, b_body.code);
  st.smn(3, 2, 4);
  st.call(5, 4, 7);
  st.pair(6, 7, 8);
  st.load(3, prod.index().code);
  st.smn(3, 8, 1);
  pf.sigma_star = st.index();

  pf.star.sigma = pf.sigma_star;
  if (s.members) {
    std::vector<FinSet> members;
    for (const auto& x : *s.members)
      for (const auto& y : *s.members) {
        auto c = product_set(x, y);
        if (std::find(members.begin(), members.end(), c) == members.end()) members.push_back(std::move(c));
      }
    pf.star.members = std::move(members);
  }
  return pf;
}

FinSet projection(const FinSet& d) {
  FinSet out;
  for (auto z : d) {
    auto [x, y] = unpair(z);
    out.insert(x);
    out.insert(y);
  }
  return out;
}

ProgramIndex projection_program() {
  // r2 remaining bits of i, r3 bit position z, r4 output, r9 = 0, r10 = 1.
  Assembler a;
  auto loop = a.label(), skip = a.label(), done = a.label();
  a.copy(1, 2);
  a.zero(3);
  a.zero(4);
  a.zero(9);
  a.load(10, 1);
  auto set_bit = [&](Assembler::Reg r) {
    // r4 |= 2^r.
    auto present = a.label(), pow = a.label(), pow_done = a.label();
    a.bit(4, r, 7);
    a.jump_if_equal(7, 10, present);
    a.load(8, 1);
    a.zero(11);
    a.bind(pow);
    a.jump_if_equal(11, r, pow_done);
    a.add(8, 8, 8);
    a.succ(11);
    a.jump(pow);
    a.bind(pow_done);
    a.add(4, 8, 4);
    a.bind(present);
  };
  a.bind(loop);
  a.jump_if_equal(2, 9, done);
  a.bit(2, 9, 5);
  a.jump_if_equal(5, 9, skip);
  a.left(3, 6);
  set_bit(6);
  a.right(3, 6);
  set_bit(6);
  a.bind(skip);
  a.halve(2, 2);
  a.succ(3);
  a.jump(loop);
  a.bind(done);
  a.copy(4, 1);
  return a.index();
}

Verdict DiagonalReport::verdict() const {
  if (!mismatches.empty()) return Verdict::Refuted;
  if (unsettled > 0) return Verdict::Unknown;
  return Verdict::Verified;
}

Json DiagonalReport::to_json() const {
  Json j;
  j["verdict"] = verdict_name(verdict());
  j["K"] = k_members;
  j["S_star"] = star_members;
  Json idx = Json::array();
  for (const auto& n : indices) idx.push_back(to_string(n));
  j["indices"] = std::move(idx);
  j["pairs_checked"] = pairs_checked;
  Json mm = Json::array();
  for (const auto& [a, b] : mismatches) mm.push_back({to_string(a), to_string(b)});
  j["mismatches"] = std::move(mm);
  j["unsettled"] = unsettled;
  j["effectively_discrete"] = discreteness.verdict == Verdict::Verified;
  j["supports"] = discreteness.supports;
  j["K_effectively_open"] = k_open;
  j["rice_shapiro_fails"] = rice_shapiro_fails;
  return j;
}

DiagonalReport diagonal_class_demo(const numberings::PrincipalNumbering& g, const ProgramIndex& eq,
                                   const std::vector<Nat>& indices, std::uint64_t bound, std::uint64_t budget) {
  DiagonalReport rep;
  const auto& fam = g.family();
  if (!fam.members) throw std::invalid_argument("diagonal_class_demo needs an explicit family");
  const auto& s = *fam.members;
  for (const auto& a : s) rep.k_members.push_back(product_set(a, a));
  rep.indices = indices;

  std::vector<std::optional<std::size_t>> cls;
  for (const auto& n : indices) cls.push_back(g.member_of(n, bound, budget));
  for (std::size_t i = 0; i < indices.size(); ++i)
    for (std::size_t j = 0; j < indices.size(); ++j) {
      ++rep.pairs_checked;
      if (!cls[i] || !cls[j]) {
        ++rep.unsettled;
        continue;
      }
      auto c = product_set(s[*cls[i]], s[*cls[j]]);
      bool truth = std::find(rep.k_members.begin(), rep.k_members.end(), c) != rep.k_members.end();
      bool listed = kernel::run_steps(eq, pair(indices[i], indices[j]), budget).halted();
      if (truth != listed) rep.mismatches.emplace_back(indices[i], indices[j]);
    }

  rep.discreteness = numberings::effective_discreteness_check(s, bound);
  for (const auto& x : s)
    for (const auto& y : s) {
      auto c = product_set(x, y);
      if (std::find(rep.star_members.begin(), rep.star_members.end(), c) == rep.star_members.end())
        rep.star_members.push_back(std::move(c));
    }
  std::vector<bool> in_k;
  for (const auto& c : rep.star_members)
    in_k.push_back(std::find(rep.k_members.begin(), rep.k_members.end(), c) != rep.k_members.end());
  rep.k_open = numberings::classical_rice_shapiro_oracle(rep.star_members, in_k).open;
  rep.rice_shapiro_fails = rep.verdict() == Verdict::Verified && !rep.k_open;
  return rep;
}

}  // namespace etw::riceshapiro
