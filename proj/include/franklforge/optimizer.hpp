#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "franklforge/functional.hpp"

namespace frankl::optimizer {

enum class MeasureType { I, II, III };

std::string to_string(MeasureType t);

struct MinimizerConfig {
  int grid = 2048;           // evaluations per inner x-range
  double golden_tol = 1e-8;  // x refinement width
  double zero_tol = 1e-12;   // |value| below this counts as "not negative"
};

struct MinimizationResult {
  double min_value = 0.0;
  functional::DiscreteMeasure witness{{{0.0, 1.0}}};
  MeasureType type = MeasureType::I;
  std::optional<double> argmin_x;  // inner atom for types II/III
  long long evaluations = 0;
};

/// Minimum of F over the three candidate minimizer classes at mean phi:
/// the point mass delta_phi, mixtures of delta_0 with one atom in [phi, 1],
/// and mixtures of delta_1 with one atom in [0, phi]. Grid scan plus
/// golden-section refinement; deterministic for a fixed config.
MinimizationResult min_over_types(const functional::FunctionalParams& p, double phi,
                                  const MinimizerConfig& cfg = {});

struct ThresholdConfig {
  MinimizerConfig inner;
  double bisection_tol = 1e-4;
  double probe_step = 0.05;  // coarse ascending probes before bisection
};

struct ThresholdReport {
  int k = 0;
  int m = 0;
  double phi_star = 0.0;
  bool capped = false;  // positive all the way up to 1/2 - tol
  std::optional<MeasureType> limiting_type;
  std::optional<double> argmin_x;
  int grid_points = 0;
  double bisection_tolerance = 0.0;
  long long all_evaluations_count = 0;
  std::vector<std::string> flags;
};

/// Largest phi (up to 1/2, bisection tolerance) below which the minimum over
/// the three classes stays non-negative. Positivity in phi is assumed to be
/// an interval; the report carries that assumption as a flag, plus a
/// heuristic flag for k < 3 where the minimizer classification is unproven.
ThresholdReport threshold_phi(const functional::FunctionalParams& p,
                              const ThresholdConfig& cfg = {});

struct TwoPointScanReport {
  long long samples = 0;
  double type_minimum = 0.0;    // min_over_types at the same phi
  double sampled_minimum = 0.0; // min F over sampled interior two-point measures
  double worst_gap = 0.0;       // min(sampled F - type_minimum)
  double worst_x = 0.0;
  double worst_y = 0.0;
  bool assertion_mode = false;  // k >= 3
  bool pass = false;            // sampled_minimum >= type_minimum - 1e-7
};

/// Random two-point measures p delta_x + (1-p) delta_y with mean phi and
/// interior support 0 < y < phi < x < 1; checks that none undercuts the
/// boundary classes. Deterministic for a fixed seed.
TwoPointScanReport two_point_scan(const functional::FunctionalParams& p, double phi,
                                  long long samples, std::uint64_t seed,
                                  const MinimizerConfig& cfg = {});

/// One threshold row per (k, m) cell, in input order; parallelizable over
/// cells with a deterministic merge.
std::vector<ThresholdReport> scan_km(const std::vector<std::pair<int, int>>& cells,
                                     const ThresholdConfig& cfg = {}, int jobs = 1);

/// Cells for k in [k_lo, k_hi] with 1 <= m <= floor(sqrt(k)), or an explicit
/// m list applied to every k (entries above floor(sqrt(k)) are kept; the
/// caller asked for them).
std::vector<std::pair<int, int>> make_scan_cells(int k_lo, int k_hi,
                                                 const std::vector<int>& m_list = {});

std::string to_json(const ThresholdReport& r);
std::string csv_header();
std::string to_csv_row(const ThresholdReport& r);

}  // namespace frankl::optimizer
