#include "etw/numberings/index_sets.hpp"

#include "etw/kernel/assembler.hpp"

#include <algorithm>

namespace etw::numberings {

using kernel::Assembler;

namespace {
bool subset(const FinSet& a, const FinSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }
}  // namespace

CeSet index_set_enumerator(const ProgramIndex& profile, const ProgramIndex& basis_set) {
  // r3 listing, r5 stage t, r6 position i, r9 = 0.
  Assembler a;
  auto stage = a.label(), pos = a.label(), next_pos = a.label(), next_stage = a.label();
  a.load(2, profile.code);
  a.call(2, 1, 3);
  a.load(4, basis_set.code);
  a.zero(5);
  a.zero(9);
  a.bind(stage);
  a.zero(6);
  a.bind(pos);
  a.call(3, 6, 7);
  a.right(7, 8);
  a.jump_if_equal(8, 9, next_pos);
  a.left(7, 8);
  a.eval(4, 8, 5, 10);
  a.jump_if_equal(10, 9, next_pos);
  a.jump(a.halt());
  a.bind(next_pos);
  a.jump_if_equal(6, 5, next_stage);
  a.succ(6);
  a.jump(pos);
  a.bind(next_stage);
  a.succ(5);
  a.jump(stage);
  return CeSet(a.index());
}

PositivityReport positivity_check(const PrincipalNumbering& g, const ProgramIndex& eq, std::uint64_t grid,
                                  std::uint64_t bound, std::uint64_t budget) {
  PositivityReport rep;
  std::vector<std::optional<std::size_t>> cls(grid);
  for (std::uint64_t n = 0; n < grid; ++n) cls[n] = g.member_of(n, bound, budget);
  bool complete = true;
  for (std::uint64_t n = 0; n < grid; ++n) {
    for (std::uint64_t m = 0; m < grid; ++m) {
      bool accepted = kernel::run_steps(eq, pair(n, m), budget).halted();
      if (!cls[n] || !cls[m]) {
        ++rep.undetermined;
        complete = false;
        continue;
      }
      bool equal = *cls[n] == *cls[m];
      if (accepted && !equal) {
        rep.sound = false;
        if (!rep.false_pair) rep.false_pair = std::pair{n, m};
      } else if (!accepted && equal) {
        complete = false;
        rep.missed.emplace_back(n, m);
      }
    }
  }
  rep.verdict = !rep.sound ? Verdict::Refuted : complete ? Verdict::Verified : Verdict::Unknown;
  return rep;
}

ProgramIndex subsets_equality_witness(const PrincipalNumbering& g, const FinSet& f) {
  // On pair(n, m): halt if n == m; otherwise semi-decide f ⊆ gamma(n) and
  // f ⊆ gamma(m) by calling the member programs on each element of f.
  Assembler a;
  auto general = a.label();
  a.left(1, 2);
  a.right(1, 3);
  a.jump_if_equal(2, 3, a.halt());
  a.bind(general);
  a.load(4, g.selector().code);
  a.call(4, 2, 5);
  a.call(4, 3, 6);
  for (auto x : f) {
    a.load(7, x);
    a.call(5, 7, 8);
    a.call(6, 7, 8);
  }
  return a.index();
}

ProgramIndex discrete_equality_witness(const PrincipalNumbering& g, const std::vector<FinSet>& supports) {
  // r5, r6 member indices of gamma(n), gamma(m); r7 stage t; r9 = 0.
  Assembler a;
  auto loop = a.label();
  a.left(1, 2);
  a.right(1, 3);
  a.jump_if_equal(2, 3, a.halt());
  a.load(4, g.selector().code);
  a.call(4, 2, 5);
  a.call(4, 3, 6);
  a.zero(7);
  a.zero(9);
  a.bind(loop);
  for (const auto& f : supports) {
    auto next = a.label();
    for (auto x : f) {
      a.load(8, x);
      a.eval(5, 8, 7, 10);
      a.jump_if_equal(10, 9, next);
      a.eval(6, 8, 7, 10);
      a.jump_if_equal(10, 9, next);
    }
    a.jump(a.halt());
    a.bind(next);
  }
  a.succ(7);
  a.jump(loop);
  return a.index();
}

DiscretenessReport effective_discreteness_check(const std::vector<FinSet>& family, std::uint64_t bound) {
  DiscretenessReport rep;
  std::vector<FinSet> fam;
  for (const auto& f : family)
    if (std::find(fam.begin(), fam.end(), f) == fam.end()) fam.push_back(f);

  for (std::size_t i = 0; i < fam.size(); ++i) {
    std::vector<std::uint64_t> pool(fam[i].begin(), fam[i].upper_bound(bound));
    std::optional<FinSet> found;
    // Smallest supports first, then by mask order.
    for (std::size_t size = 0; size <= pool.size() && !found && size <= 20; ++size) {
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pool.size()) && !found; ++mask) {
        if (static_cast<std::size_t>(__builtin_popcountll(mask)) != size) continue;
        FinSet f;
        for (std::size_t b = 0; b < pool.size(); ++b)
          if (mask >> b & 1) f.insert(pool[b]);
        bool separates = true;
        for (std::size_t j = 0; j < fam.size() && separates; ++j)
          if (j != i && subset(f, fam[j])) separates = false;
        if (separates) found = std::move(f);
      }
    }
    if (!found) {
      rep.verdict = Verdict::Refuted;
      rep.blocked = i;
      rep.absolute = fam[i].empty() || *fam[i].rbegin() <= bound;
      rep.supports.clear();
      return rep;
    }
    rep.supports.push_back(std::move(*found));
  }
  rep.verdict = Verdict::Verified;
  if (!rep.supports.empty()) {
    std::vector<Nat> codes;
    for (const auto& f : rep.supports) codes.push_back(dn_encode(f));
    rep.sequence = table_program(codes);
  }
  return rep;
}

OpenFormReport classical_rice_shapiro_oracle(const std::vector<FinSet>& family, const std::vector<bool>& k) {
  OpenFormReport rep;
  for (std::size_t a = 0; a < family.size(); ++a) {
    if (!k[a]) continue;
    for (std::size_t b = 0; b < family.size(); ++b) {
      if (!k[b] && subset(family[a], family[b])) {
        rep.counterexample = std::pair{a, b};
        return rep;
      }
    }
  }
  rep.open = true;
  for (std::size_t a = 0; a < family.size(); ++a) {
    if (!k[a]) continue;
    bool minimal = true;
    for (std::size_t b = 0; b < family.size() && minimal; ++b)
      if (b != a && k[b] && subset(family[b], family[a]) && family[b] != family[a]) minimal = false;
    if (minimal && std::find(rep.generators.begin(), rep.generators.end(), family[a]) == rep.generators.end())
      rep.generators.push_back(family[a]);
  }
  return rep;
}

}  // namespace etw::numberings
