#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "franklforge/lifting.hpp"
#include "franklforge/rational.hpp"

namespace frankl::entropy {

/// Distribution with exact rational masses; probabilities stay rational up to
/// the single log-evaluation boundary inside entropy().
struct FiniteDistribution {
  std::vector<std::string> outcomes;  // optional labels, may be empty
  std::vector<Rational> masses;

  /// Non-negative masses summing to exactly 1.
  void validate() const;
};

/// Shannon entropy in nats, 0 log 0 = 0, compensated summation.
double entropy(const FiniteDistribution& d);

/// Entropy of (c_1/total, ..., c_r/total) straight from integer counts.
double entropy_from_counts(std::span<const std::uint64_t> counts, std::uint64_t total);

inline constexpr std::uint64_t kDefaultPairBudget = 10'000'000;

/// Residual tolerance shared by all identity checks.
inline constexpr double kResidualTol = 1e-9;

/// Uniform product measure on lift x lift. Throws BudgetExceededError when
/// |lift|^2 exceeds the pair budget.
FiniteDistribution joint_product_distribution(const lifting::LiftedFamily& lf,
                                              std::uint64_t pair_budget = kDefaultPairBudget);

struct ResidualReport {
  std::string check;
  std::string instance;  // filled by callers that know the provenance
  int coord = 0;         // 0 when the check is not per-coordinate
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  bool pass = false;
};

std::string to_json(const ResidualReport& r);

/// H(X_1 Y_1, ..., X_n Y_n) <= H(X_1, ..., X_n): the product of two
/// independent uniform samples stays supported on the lift, whose uniform
/// distribution maximizes entropy. lhs is computed by pushing the product
/// measure through component-wise multiplication.
ResidualReport verify_basic_inequality(const lifting::LiftedFamily& lf,
                                       std::uint64_t pair_budget = kDefaultPairBudget);

/// Conditional entropies H(X_i | X_{<i}); their sum reconstructs H(X).
std::vector<double> chain_terms(const lifting::LiftedFamily& lf);

/// H(X_i | X_{<i}) against the mixture of h_{k_i,m_i} over prefixes.
ResidualReport verify_hf(const lifting::LiftedFamily& lf, int coord);

/// H(X_i Y_i | X_{<i}, Y_{<i}) against the double mixture of g_{k_i,m_i}.
ResidualReport verify_hfmin(const lifting::LiftedFamily& lf, int coord,
                            std::uint64_t pair_budget = kDefaultPairBudget);

/// H(X_i Y_i | X_{<i}, Y_{<i}) - H(X_i | X_{<i}) against F_{k_i,m_i}(mu_i).
ResidualReport verify_difference_identity(const lifting::LiftedFamily& lf, int coord,
                                          std::uint64_t pair_budget = kDefaultPairBudget);

}  // namespace frankl::entropy
