#pragma once

#include "etw/numberings/ceset.hpp"
#include "etw/spaces/space.hpp"

#include <boost/dynamic_bitset.hpp>

#include <string>
#include <utility>
#include <vector>

namespace etw::domains {

using kernel::ProgramIndex;

/// Basis of a weakly effective ω-continuous domain, numbered by β with
/// β(0) = ⊥. Explicit domains are finite posets listed in basis order; there
/// every directed set has a maximum, so β(i) ≪ β(j) iff β(i) ≤ β(j). Program
/// domains only carry a program enumerating the codes pair(i, j) of the
/// way-below relation.
class Domain {
 public:
  enum class Kind { Explicit, Program };

  /// `leq` lists pairs (i, j) with β(i) ≤ β(j); reflexive and transitive
  /// closure is taken. Throws std::invalid_argument when the closure is not
  /// antisymmetric, when element 0 is not least, or on out-of-range pairs.
  static Domain explicit_domain(std::vector<std::string> names,
                                const std::vector<std::pair<std::size_t, std::size_t>>& leq);
  static Domain program_domain(ProgramIndex waybelow);

  Kind kind() const { return kind_; }
  /// Number of basis elements (explicit tier).
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  bool leq(std::size_t i, std::size_t j) const { return up_[i].test(j); }
  bool way_below(std::size_t i, std::size_t j) const { return leq(i, j); }
  /// {n : β(n) ≪ β(a)}.
  FinSet approx_set(std::size_t a) const;
  /// The way-below relation as a c.e. set of codes pair(i, j).
  numberings::CeSet raw_way_below() const;

  /// pair(0, pair(k, D-code of {i·k + j : β(i) ≤ β(j)})) or pair(1, e).
  Nat code() const;
  static Domain from_code(const Nat& code);

 private:
  Kind kind_ = Kind::Explicit;
  std::vector<std::string> names_;
  std::vector<boost::dynamic_bitset<>> up_;  // up_[i] = {j : β(i) ≤ β(j)}
  ProgramIndex waybelow_;
};

/// Every labeled poset on {0, ..., k-1} with least element 0, for
/// 1 <= k <= max_elements, ordered by k.
std::vector<Domain> enumerate_domains(std::size_t max_elements);

/// Some x with M ≪ x ≪ y, the least such index. Throws std::domain_error
/// naming the first m in M with β(m) not ≪ β(y).
std::size_t interpolate(const Domain& d, const FinSet& m, std::size_t y);

/// U_n = {x : β(n) ≪ x} as a set of elements.
spaces::PointSet scott_open(const Domain& d, std::size_t n);

struct DomainSpace {
  spaces::Space space;
  spaces::ModularWitness witness;
};

/// The Scott topology on an explicit domain with k elements: α(0) = ∅,
/// α(n) = U_n for 0 < n < k, α(k) = U_0 = X and ∅ beyond. The witness is
/// b_n = β(n) with 𝒪_n = {n} for n < k (𝒪_0 = {k}), and b_k = ⊥, 𝒪_k = {k}.
DomainSpace domain_to_modular(const Domain& d);

}  // namespace etw::domains
