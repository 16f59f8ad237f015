#include "etw/numberings/wn_family.hpp"

#include "etw/kernel/assembler.hpp"
#include "etw/kernel/library.hpp"
#include "etw/kernel/smn.hpp"

#include <algorithm>

namespace etw::numberings {

using kernel::Assembler;

namespace {

FinSet cut(const FinSet& f, std::uint64_t bound) {
  return FinSet(f.begin(), f.upper_bound(bound));
}

bool subset(const FinSet& a, const FinSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

// On pair(pair(n, F), x): halts iff x ∈ D_F and x ∈ W_n.
ProgramIndex intersection_body() {
  Assembler a;
  auto stuck = a.label();
  a.left(1, 2);
  a.right(1, 3);
  a.left(2, 4);
  a.right(2, 5);
  a.bit(5, 3, 6);
  a.zero(7);
  a.jump_if_equal(6, 7, stuck);
  a.call(4, 3, 8);
  a.copy(3, 1);
  a.jump(a.halt());
  a.bind(stuck);
  a.jump(stuck);
  return a.index();
}

// Largest t with pair(x, t) < limit, or nullopt when even t = 0 is too big.
std::optional<std::uint64_t> max_t_below(std::uint64_t x, std::uint64_t limit) {
  if (pair(x, std::uint64_t{0}) >= limit) return std::nullopt;
  std::uint64_t lo = 0, hi = limit;
  while (lo < hi) {
    std::uint64_t mid = lo + (hi - lo + 1) / 2;
    if (pair(x, mid) < limit) lo = mid;
    else hi = mid - 1;
  }
  return lo;
}

}  // namespace

std::optional<std::size_t> WnFamily::member_index(const FinSet& f) const {
  if (!members) return std::nullopt;
  for (std::size_t i = 0; i < members->size(); ++i)
    if ((*members)[i] == f) return i;
  return std::nullopt;
}

std::optional<std::size_t> WnFamily::match_below(const FinSet& approx, std::uint64_t bound) const {
  if (!members) return std::nullopt;
  for (std::size_t i = 0; i < members->size(); ++i)
    if (cut((*members)[i], bound) == approx) return i;
  return std::nullopt;
}

ProgramIndex intersection_sigma(const FinSet& f) {
  Assembler a;
  a.load(2, dn_encode(f));
  a.pair(1, 2, 3);
  a.load(4, intersection_body().code);
  a.smn(4, 3, 1);
  return a.index();
}

WnFamily subsets_family(const FinSet& f) {
  std::vector<std::uint64_t> elems(f.begin(), f.end());
  std::vector<FinSet> members;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << elems.size()); ++mask) {
    FinSet m;
    for (std::size_t i = 0; i < elems.size(); ++i)
      if (mask >> i & 1) m.insert(elems[i]);
    members.push_back(std::move(m));
  }
  return {intersection_sigma(f), std::nullopt, std::move(members)};
}

WnFamily singleton_family(const FinSet& a) {
  return {kernel::lib::constant(CeSet::finite(a).index().code), std::nullopt, std::vector<FinSet>{a}};
}

WnFamily discrete_family(const std::vector<FinSet>& members, const std::vector<FinSet>& supports) {
  if (members.size() != supports.size()) throw std::invalid_argument("discrete_family: one support per member");
  // r2 = n, r4 = t, r9 = 0.
  Assembler a;
  auto loop = a.label();
  a.copy(1, 2);
  a.zero(4);
  a.zero(9);
  a.bind(loop);
  for (std::size_t i = 0; i < members.size(); ++i) {
    auto next = a.label();
    for (auto x : supports[i]) {
      a.load(5, x);
      a.eval(2, 5, 4, 6);
      a.jump_if_equal(6, 9, next);
    }
    a.load(1, CeSet::finite(members[i]).index().code);
    a.jump(a.halt());
    a.bind(next);
  }
  a.succ(4);
  a.jump(loop);
  return {a.index(), std::nullopt, members};
}

std::optional<std::uint64_t> first_domain_element(const ProgramIndex& sigma, std::uint64_t search_budget) {
  constexpr std::uint64_t kBlindInputs = 256;
  std::optional<std::uint64_t> best, best_x;
  for (std::uint64_t x = 0;; ++x) {
    if (!best && x >= kBlindInputs) break;
    std::uint64_t cap = search_budget;
    if (best) {
      auto t = max_t_below(x, *best);
      if (!t) break;
      cap = *t;
    }
    auto r = kernel::run_steps(sigma, x, cap);
    if (!r.halted()) continue;
    auto j = pair(x, r.steps_used);
    if (!best || j < *best) {
      best = j;
      best_x = x;
    }
  }
  return best_x;
}

ProgramIndex h0_from_sigma(const ProgramIndex& sigma, std::uint64_t search_budget) {
  Assembler a;
  auto fallback = a.label();
  a.load(2, sigma.code);
  a.left(1, 3);
  a.right(1, 4);
  a.eval(2, 3, 4, 5);
  a.zero(6);
  a.jump_if_equal(5, 6, fallback);
  a.copy(3, 1);
  a.jump(a.halt());
  a.bind(fallback);
  if (auto d = first_domain_element(sigma, search_budget)) {
    a.load(1, *d);
    a.jump(a.halt());
  } else {
    auto loop = a.label(), next = a.label();
    a.zero(7);
    a.bind(loop);
    a.left(7, 3);
    a.right(7, 4);
    a.eval(2, 3, 4, 5);
    a.jump_if_equal(5, 6, next);
    a.copy(3, 1);
    a.jump(a.halt());
    a.bind(next);
    a.succ(7);
    a.jump(loop);
  }
  return a.index();
}

std::vector<WnRecord> wn_check(const WnFamily& s, const std::vector<CeSet>& candidates, std::uint64_t budget,
                               std::uint64_t bound) {
  std::vector<WnRecord> out;
  for (const auto& cand : candidates) {
    WnRecord rec;
    std::optional<std::size_t> cand_member;
    if (cand.extension()) cand_member = s.member_index(*cand.extension());

    auto r = kernel::run_steps(s.sigma, cand.index().code, budget);
    if (!r.halted()) {
      if (r.diverged && cand_member) {
        rec.verdict = Verdict::Refuted;
        rec.note = "sigma diverges on an index of a member";
      } else {
        rec.note = "sigma did not halt within budget";
      }
      out.push_back(std::move(rec));
      continue;
    }
    rec.sigma_value = *r.value;
    rec.image = CeSet(ProgramIndex{*r.value}).below(bound, budget);

    if (s.members) {
      bool inside_some = std::any_of(s.members->begin(), s.members->end(),
                                     [&](const FinSet& m) { return subset(rec.image, m); });
      if (!inside_some) {
        rec.verdict = Verdict::Refuted;
        rec.note = "W_sigma(n) has elements outside every member";
      } else if (cand_member) {
        const auto& target = (*s.members)[*cand_member];
        if (!subset(rec.image, target)) {
          rec.verdict = Verdict::Refuted;
          rec.note = "W_n is a member but W_sigma(n) differs from it";
        } else if (rec.image == cut(target, bound)) {
          rec.verdict = Verdict::Verified;
          rec.member = cand_member;
        } else {
          rec.note = "W_sigma(n) not yet equal to W_n at this budget";
        }
      } else if (auto m = s.match_below(rec.image, bound)) {
        rec.verdict = Verdict::Verified;
        rec.member = m;
      } else {
        rec.note = "W_sigma(n) matches no member at this budget";
      }
    } else {
      rec.note = "symbolic family: image reported without membership verdict";
    }
    out.push_back(std::move(rec));
  }
  return out;
}

PrincipalNumbering::PrincipalNumbering(WnFamily family) : family_(std::move(family)) {
  h0_ = family_.h0 ? *family_.h0 : h0_from_sigma(family_.sigma);
}

ProgramIndex PrincipalNumbering::selector() const {
  Assembler a;
  a.load(2, h0_.code);
  a.call(2, 1, 3);
  a.load(4, family_.sigma.code);
  a.call(4, 3, 1);
  return a.index();
}

std::optional<Nat> PrincipalNumbering::index_of(const Nat& n, std::uint64_t budget) const {
  auto x = kernel::run_steps(h0_, n, budget);
  if (!x.halted()) return std::nullopt;
  auto m = kernel::run_steps(family_.sigma, *x.value, budget);
  if (!m.halted()) return std::nullopt;
  return *m.value;
}

std::optional<FinSet> PrincipalNumbering::below(const Nat& n, std::uint64_t bound, std::uint64_t budget) const {
  auto m = index_of(n, budget);
  if (!m) return std::nullopt;
  return CeSet(ProgramIndex{*m}).below(bound, budget);
}

std::optional<std::size_t> PrincipalNumbering::member_of(const Nat& n, std::uint64_t bound,
                                                          std::uint64_t budget) const {
  auto b = below(n, bound, budget);
  if (!b) return std::nullopt;
  return family_.match_below(*b, bound);
}

SurjectivityReport surjectivity_check(const PrincipalNumbering& g, std::uint64_t max_n, std::uint64_t bound,
                                      std::uint64_t budget) {
  SurjectivityReport rep;
  const auto& members = g.family().members;
  if (!members) return rep;
  rep.index.assign(members->size(), std::nullopt);
  rep.from_search.assign(members->size(), false);
  std::size_t missing = members->size();
  for (std::uint64_t n = 0; n <= max_n && missing > 0; ++n) {
    rep.searched = n + 1;
    auto m = g.member_of(n, bound, budget);
    if (m && !rep.index[*m]) {
      rep.index[*m] = Nat(n);
      rep.from_search[*m] = true;
      --missing;
    }
  }
  for (std::size_t i = 0; i < members->size(); ++i) {
    if (rep.index[i]) continue;
    auto x = CeSet::finite((*members)[i]).index().code;
    auto t = kernel::run_steps(g.family().sigma, x, budget);
    if (!t.halted()) continue;
    Nat n = pair(x, Nat(t.steps_used));
    if (g.member_of(n, bound, budget) == i) {
      rep.index[i] = n;
      --missing;
    }
  }
  rep.verdict = missing == 0 ? Verdict::Verified : Verdict::Unknown;
  return rep;
}

ProgramIndex reduction_to_principal(const WnFamily& s, const ProgramIndex& f) {
  // On pair(pair(sigma, f), i): x := f(i); least t with sigma(x) halting in t
  // steps; output pair(x, t), which h0 maps back to x.
  Assembler a;
  auto loop = a.label(), next = a.label();
  a.left(1, 2);
  a.right(1, 3);
  a.left(2, 4);
  a.right(2, 5);
  a.call(5, 3, 6);
  a.zero(7);
  a.zero(9);
  a.bind(loop);
  a.eval(4, 6, 7, 8);
  a.jump_if_equal(8, 9, next);
  a.pair(6, 7, 1);
  a.jump(a.halt());
  a.bind(next);
  a.succ(7);
  a.jump(loop);
  return kernel::smn(a.index(), pair(s.sigma.code, f.code));
}

}  // namespace etw::numberings
