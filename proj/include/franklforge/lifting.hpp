#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "franklforge/families.hpp"
#include "franklforge/rational.hpp"

namespace frankl::lifting {

/// Per-coordinate alphabet {0, e^1..e^{k-1}, 1, z^1..z^{m-1}} encoded as
/// 0 | 1..k-1 | k | k+1..k+m-1. The code order doubles as the deterministic
/// iteration order, and z^0 is identified with 1 so the alphabet has exactly
/// k+m symbols.
using SymbolCode = std::uint8_t;

enum class SymbolKind : std::uint8_t { Zero, Eps, One, Zeta };

struct Symbol {
  SymbolKind kind = SymbolKind::Zero;
  int exp = 0;  // Eps: 1..k-1; Zeta: 1..m-1; unused otherwise

  static Symbol zero() { return {SymbolKind::Zero, 0}; }
  static Symbol one() { return {SymbolKind::One, 0}; }
  static Symbol eps(int j) { return {SymbolKind::Eps, j}; }
  static Symbol zeta(int l) { return {SymbolKind::Zeta, l}; }

  bool operator==(const Symbol&) const = default;
};

/// Throws ExponentOutOfRangeError if the exponent is invalid for (k, m).
SymbolCode encode(const Symbol& s, int k, int m);
Symbol decode(SymbolCode c, int k, int m);

/// Products in the k+m-symbol algebra: e is nilpotent of order k, z is an
/// m-th root of unity, and e^u z^l = e^u. Commutative and associative.
SymbolCode mul_symbol(SymbolCode a, SymbolCode b, int k, int m);
Symbol mul_symbol(const Symbol& a, const Symbol& b, int k, int m);

/// Projection to the base: bit i set iff symbol i is 1 or a z power.
families::Bitmask theta(std::span<const SymbolCode> tuple, const families::WeightSpec& w);

inline constexpr std::uint64_t kDefaultLiftBudget = 1'000'000;

/// Explicit enumeration of the lifted family: every tuple whose per-coordinate
/// projection lands in the base. Coordinates of a base set A carry the m_i
/// symbols projecting to 1; the rest carry the k_i symbols projecting to 0,
/// so the fiber over A has prod_{j in A} m_j * prod_{j not in A} k_j tuples.
/// Uniform distribution on these tuples induces the weighted distribution on
/// the base. Rows are stored in lexicographic code order.
class LiftedFamily {
 public:
  LiftedFamily(families::SetFamily base, families::WeightSpec w,
               std::uint64_t budget = kDefaultLiftBudget);

  const families::SetFamily& base() const { return base_; }
  const families::WeightSpec& weights() const { return weights_; }
  int n() const { return base_.n(); }
  std::uint64_t size() const { return size_; }
  std::span<const SymbolCode> tuple(std::uint64_t idx) const {
    return {data_.data() + idx * static_cast<std::uint64_t>(n()), static_cast<std::size_t>(n())};
  }
  int alphabet_size(int coord) const;  // k_i + m_i, coord 1-based

  static BigInt predicted_size(const families::SetFamily& base, const families::WeightSpec& w);

 private:
  families::SetFamily base_;
  families::WeightSpec weights_;
  std::uint64_t size_ = 0;
  std::vector<SymbolCode> data_;  // row-major, sorted
};

/// P[theta(X) = a] under the uniform distribution on the lift; equals the
/// normalized base weight exactly. Throws SetAbsentError if a is not in the
/// base.
Rational base_marginal(const LiftedFamily& lf, families::Bitmask a);

/// P[X_i = 0 | X_{<i} = prefix], exact. Also asserts the level equalities:
/// all k_i zero-side symbols are conditionally equiprobable, as are all m_i
/// one-side symbols. Throws ZeroProbabilityPrefixError on an impossible
/// prefix. coord is 1-based; prefix holds codes for coordinates 1..coord-1.
Rational conditional_zero_prob(const LiftedFamily& lf, int coord,
                               std::span<const SymbolCode> prefix);

/// Finitely-supported measure with exact rational atoms and masses.
struct RationalMeasure {
  std::vector<std::pair<Rational, Rational>> atoms;  // (location, mass), merged, ascending
  Rational mean() const;
};

/// The prefix-mixture measure for coordinate i: an atom at
/// k_i * P[X_i = 0 | X_{<i} = a] with mass P[X_{<i} = a], coincident atoms
/// merged. Its mean is k_i * P[X_i = 0], which equals the abundance f_i.
RationalMeasure mu_i(const LiftedFamily& lf, int coord);

}  // namespace frankl::lifting
