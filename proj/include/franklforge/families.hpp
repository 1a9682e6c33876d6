#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "franklforge/errors.hpp"
#include "franklforge/rational.hpp"

namespace frankl::families {

/// Subset of [n] encoded with bit j-1 <=> element j.
using Bitmask = std::uint32_t;

inline constexpr int kMaxGroundSet = 24;
inline constexpr int kMaxEnumerationGroundSet = 4;  // n=5 behind an explicit override

enum class ClosureOp { Intersection, Union };

/// A family of distinct subsets of [n], kept in canonical form: ascending
/// bitmask order, no duplicates. Immutable after construction.
class SetFamily {
 public:
  /// Canonicalizes (sorts, deduplicates). Throws DomainError if n is out of
  /// range or a mask has bits >= n.
  SetFamily(int n, std::vector<Bitmask> sets);

  int n() const { return n_; }
  const std::vector<Bitmask>& sets() const { return sets_; }
  std::size_t size() const { return sets_.size(); }
  bool contains(Bitmask a) const;

  /// Union of all member sets.
  Bitmask support() const;

  bool operator==(const SetFamily&) const = default;

 private:
  int n_;
  std::vector<Bitmask> sets_;
};

/// Per-coordinate weight parameters. Product mode stores (k_i, m_i) pairs
/// giving set weight prod_{j in A} m_j/k_j. Boltzmann mode stores a scalar
/// t = m/k in (0,1], reduced, giving weight t^|A|; the two modes agree
/// exactly when all product entries equal (k, m).
class WeightSpec {
 public:
  static WeightSpec product(std::vector<int> kvec, std::vector<int> mvec);
  static WeightSpec boltzmann(int n, const Rational& t);
  static WeightSpec uniform(int n);  // k_i = m_i = 1

  int n() const { return static_cast<int>(kvec_.size()); }
  bool boltzmann_mode() const { return boltzmann_; }
  const std::vector<int>& kvec() const { return kvec_; }
  const std::vector<int>& mvec() const { return mvec_; }

  /// Boltzmann mode only.
  Rational t() const;
  /// Inverse temperature log(1/t); Boltzmann mode only.
  double beta() const;

 private:
  WeightSpec(std::vector<int> kvec, std::vector<int> mvec, bool boltzmann);
  std::vector<int> kvec_;
  std::vector<int> mvec_;
  bool boltzmann_;
};

bool is_intersection_closed(const SetFamily& f);
bool is_union_closed(const SetFamily& f);

/// Smallest superset of f closed under op. Idempotent. f must be non-empty.
SetFamily close_under(const SetFamily& f, ClosureOp op);

/// Complements every set. Involution; swaps union-closure and
/// intersection-closure.
SetFamily dualize(const SetFamily& f);

/// Exact weight prod_{j in A} m_j/k_j (empty product = 1).
Rational weight(Bitmask a, const WeightSpec& w);

/// f_i = sum_{A in f, i not in A} w(A) / sum_{A in f} w(A), exact.
/// Elements are 1-based. Throws FamilyTooSmallError for |f| < 2 and
/// ElementAbsentError if i does not occur in any set. Precondition (not
/// checked here): f intersection-closed.
Rational abundance(const SetFamily& f, const WeightSpec& w, int element);

/// Element of the support maximizing abundance; ties go to the smallest index.
std::pair<int, Rational> best_element(const SetFamily& f, const WeightSpec& w);

struct VerificationRecord {
  int best_element = 0;
  Rational best_abundance;
  bool pass = false;  // best_abundance >= 1/2
  std::vector<std::pair<int, Rational>> abundances;  // per support element, ascending
};

VerificationRecord verify_frankl(const SetFamily& f, const WeightSpec& w);

/// Visits every family over [n] with at least min_size sets closed under op,
/// in ascending order of the family's characteristic bitmask over 2^(2^n)
/// candidates. Hard cap n <= 4; n = 5 only with allow_n5 (2^32 candidates).
void for_each_closed_family(int n, ClosureOp op, int min_size,
                            const std::function<void(const SetFamily&)>& visit,
                            bool allow_n5 = false);

std::vector<SetFamily> enumerate_closed_families(int n, ClosureOp op, int min_size = 2,
                                                 bool allow_n5 = false);

/// Draws each subset independently with the given density, then closes under
/// op. Deterministic for a fixed seed; an empty draw is retried on a
/// derived substream.
SetFamily random_closed_family(int n, ClosureOp op, double density, std::uint64_t seed);

struct ExhaustiveSummary {
  std::uint64_t families_checked = 0;
  std::uint64_t failures = 0;
  Rational min_best_abundance;      // over all checked families
  std::vector<Bitmask> argmin_sets; // family attaining the minimum
  std::vector<std::vector<Bitmask>> counterexamples;  // capped
};

/// verify_frankl over every intersection-closed family with >= min_size sets.
/// Partitionable by candidate range; the merged result is identical for any
/// jobs count.
ExhaustiveSummary run_exhaustive(int n, const WeightSpec& w, int min_size = 2,
                                 int jobs = 1, bool allow_n5 = false);

}  // namespace frankl::families
