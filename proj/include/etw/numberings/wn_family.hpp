#pragma once

#include "etw/numberings/ceset.hpp"
#include "etw/verdict.hpp"

#include <optional>
#include <string>
#include <vector>

namespace etw::numberings {

/// A wn-family given by its normalizing function sigma. On the explicit
/// tier the members are listed, which makes membership decidable.
struct WnFamily {
  ProgramIndex sigma;
  std::optional<ProgramIndex> h0;
  std::optional<std::vector<FinSet>> members;

  /// Position of f among the explicit members.
  std::optional<std::size_t> member_index(const FinSet& f) const;
  /// Member whose part below `bound` equals `approx`.
  std::optional<std::size_t> match_below(const FinSet& approx, std::uint64_t bound) const;
};

/// sigma(n) = index of W_n ∩ f. Total.
ProgramIndex intersection_sigma(const FinSet& f);
/// The family of all subsets of f, normalized by intersection_sigma(f).
WnFamily subsets_family(const FinSet& f);
/// The one-member family {a}, with constant sigma.
WnFamily singleton_family(const FinSet& a);
/// A family with separating supports (F_i ⊆ A_i, and A_i is the only member
/// containing F_i). sigma(n) searches (t, i) for F_i ⊆ W_n within t steps per
/// element and returns a member-list index of A_i.
WnFamily discrete_family(const std::vector<FinSet>& members, const std::vector<FinSet>& supports);

/// Total enumerator of dom(sigma): h0(pair(x, t)) = x when sigma(x) halts
/// within t steps. Other inputs map to the first such x in Cantor order of
/// (x, t); when that first hit is found within `search_budget` it is baked
/// into the program, otherwise the program searches for it at run time (and
/// diverges when dom(sigma) is empty).
ProgramIndex h0_from_sigma(const ProgramIndex& sigma, std::uint64_t search_budget = 1u << 16);

/// First pair (x, t) in Cantor order with sigma(x) halting within t steps,
/// searched natively.
std::optional<std::uint64_t> first_domain_element(const ProgramIndex& sigma, std::uint64_t search_budget);

struct WnRecord {
  Verdict verdict = Verdict::Unknown;
  std::optional<Nat> sigma_value;
  FinSet image;  // W_{sigma(n)} below the bound at the budget
  std::optional<std::size_t> member;
  std::string note;
};

/// Checks both wn conditions for each candidate index n under (budget,
/// bound). Verified: sigma(n) halted and W_{sigma(n)} matched a member (and,
/// when the candidate's extension is known and lies in the family, equals
/// it). Refuted only on definite contradictions.
std::vector<WnRecord> wn_check(const WnFamily& s, const std::vector<CeSet>& candidates, std::uint64_t budget,
                               std::uint64_t bound);

/// The standard principal numbering gamma(n) = W_{sigma(h0(n))}.
class PrincipalNumbering {
 public:
  explicit PrincipalNumbering(WnFamily family);

  const WnFamily& family() const { return family_; }
  const ProgramIndex& h0() const { return h0_; }
  /// Program n -> sigma(h0(n)).
  ProgramIndex selector() const;

  /// sigma(h0(n)), each stage run within `budget` steps.
  std::optional<Nat> index_of(const Nat& n, std::uint64_t budget) const;
  /// gamma(n) below `bound` at `budget`.
  std::optional<FinSet> below(const Nat& n, std::uint64_t bound, std::uint64_t budget) const;
  std::optional<std::size_t> member_of(const Nat& n, std::uint64_t bound, std::uint64_t budget) const;

 private:
  WnFamily family_;
  ProgramIndex h0_;
};

struct SurjectivityReport {
  Verdict verdict = Verdict::Unknown;
  std::vector<std::optional<Nat>> index;  // per member, some n with gamma(n) = member
  std::vector<bool> from_search;          // true when index is the least such n
  std::uint64_t searched = 0;             // indices examined
};

/// Searches n = 0, 1, ... up to max_n for each explicit member. Members not
/// met by then get the index pair(x, t), where x is a member-list program for
/// the member and t the halting time of sigma on x; that index is checked
/// like the others.
SurjectivityReport surjectivity_check(const PrincipalNumbering& g, std::uint64_t max_n, std::uint64_t bound,
                                      std::uint64_t budget);

/// For a selector f of a computable sequence inside the family, a program r
/// with W_{f(i)} = gamma(r(i)). Built as smn of a fixed search program.
ProgramIndex reduction_to_principal(const WnFamily& s, const ProgramIndex& f);

}  // namespace etw::numberings
