#include "franklforge/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace frankl::optimizer {

using functional::DiscreteMeasure;
using functional::FunctionalParams;

std::string to_string(MeasureType t) {
  switch (t) {
    case MeasureType::I:
      return "I";
    case MeasureType::II:
      return "II";
    case MeasureType::III:
      return "III";
  }
  return "?";
}

namespace {

constexpr double kGolden = 0.6180339887498949;  // (sqrt(5)-1)/2

/// Golden-section minimum of f on [a, b] to the given x width. Returns the
/// best (x, f(x)) probed, counting evaluations into evals.
template <typename Fn>
std::pair<double, double> golden_min(Fn&& f, double a, double b, double tol,
                                     long long& evals) {
  double c = b - kGolden * (b - a);
  double d = a + kGolden * (b - a);
  double fc = f(c), fd = f(d);
  evals += 2;
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kGolden * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kGolden * (b - a);
      fd = f(d);
    }
    ++evals;
  }
  return fc < fd ? std::make_pair(c, fc) : std::make_pair(d, fd);
}

struct InnerMin {
  double x = 0.0;
  double value = 0.0;
};

/// Grid scan over [lo, hi] followed by golden-section refinement around the
/// best grid cell.
template <typename Fn>
InnerMin minimize_on_interval(Fn&& f, double lo, double hi, const MinimizerConfig& cfg,
                              long long& evals) {
  const int grid = std::max(cfg.grid, 2);
  InnerMin best{lo, f(lo)};
  ++evals;
  int best_idx = 0;
  for (int i = 1; i <= grid; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / grid;
    const double v = f(x);
    ++evals;
    if (v < best.value) {
      best = {x, v};
      best_idx = i;
    }
  }
  const double cell = (hi - lo) / grid;
  const double a = std::max(lo, lo + cell * (best_idx - 1));
  const double b = std::min(hi, lo + cell * (best_idx + 1));
  if (b > a) {
    auto [gx, gv] = golden_min(f, a, b, cfg.golden_tol, evals);
    if (gv < best.value) best = {gx, gv};
  }
  return best;
}

DiscreteMeasure type2_measure(double phi, double x) {
  const double mass = x > 0.0 ? phi / x : 1.0;
  if (mass >= 1.0) return DiscreteMeasure::point(x);
  return DiscreteMeasure({{0.0, 1.0 - mass}, {x, mass}});
}

DiscreteMeasure type3_measure(double phi, double x) {
  const double q = (phi - x) / (1.0 - x);
  if (q <= 0.0) return DiscreteMeasure::point(x);
  return DiscreteMeasure({{x, 1.0 - q}, {1.0, q}});
}

}  // namespace

MinimizationResult min_over_types(const FunctionalParams& p, double phi,
                                  const MinimizerConfig& cfg) {
  if (!(phi > 0.0 && phi < 0.5)) {
    throw DomainError("min_over_types needs phi in (0, 1/2)");
  }
  MinimizationResult res;
  res.min_value = functional::F_type1(p, phi);
  res.witness = DiscreteMeasure::point(phi);
  res.type = MeasureType::I;
  ++res.evaluations;

  auto f2 = [&](double x) { return functional::F_type2(p, phi, x); };
  InnerMin m2 = minimize_on_interval(f2, phi, 1.0, cfg, res.evaluations);
  if (m2.value < res.min_value) {
    res.min_value = m2.value;
    res.type = MeasureType::II;
    res.argmin_x = m2.x;
    res.witness = type2_measure(phi, m2.x);
  }

  auto f3 = [&](double x) { return functional::F_type3(p, phi, x); };
  InnerMin m3 = minimize_on_interval(f3, 0.0, phi, cfg, res.evaluations);
  if (m3.value < res.min_value) {
    res.min_value = m3.value;
    res.type = MeasureType::III;
    res.argmin_x = m3.x;
    res.witness = type3_measure(phi, m3.x);
  }
  return res;
}

ThresholdReport threshold_phi(const FunctionalParams& p, const ThresholdConfig& cfg) {
  if (p.k < 1 || p.m < 1) throw DomainError("k and m must be >= 1");
  if (!(cfg.bisection_tol > 0.0 && cfg.bisection_tol < 0.5)) {
    throw DomainError("bisection tolerance must lie in (0, 1/2)");
  }
  if (!(cfg.probe_step > 0.0)) throw DomainError("probe step must be positive");
  ThresholdReport rep;
  rep.k = p.k;
  rep.m = p.m;
  rep.grid_points = cfg.inner.grid;
  rep.bisection_tolerance = cfg.bisection_tol;
  rep.flags.push_back("monotonicity-assumed");
  if (p.k < 3) rep.flags.push_back("heuristic: minimizer class unverified");

  long long evals = 0;
  // Track the boundary classification from the smallest failing phi probed.
  std::optional<MeasureType> fail_type;
  std::optional<double> fail_x;
  auto positive = [&](double phi) {
    MinimizationResult r = min_over_types(p, phi, cfg.inner);
    evals += r.evaluations;
    const bool ok = r.min_value > -cfg.inner.zero_tol;
    if (!ok) {
      fail_type = r.type;
      fail_x = r.argmin_x;
    }
    return ok;
  };

  const double hi_probe = 0.5 - cfg.bisection_tol;
  double last_ok = 0.0;
  std::optional<double> first_fail;
  for (double phi = cfg.probe_step; phi < hi_probe; phi += cfg.probe_step) {
    if (positive(phi)) {
      last_ok = phi;
    } else {
      first_fail = phi;
      break;
    }
  }
  if (!first_fail) {
    if (positive(hi_probe)) {
      rep.phi_star = 0.5;
      rep.capped = true;
      rep.all_evaluations_count = evals;
      return rep;
    }
    first_fail = hi_probe;
  }

  double lo = last_ok > 0.0 ? last_ok : cfg.bisection_tol;
  double hi = *first_fail;
  while (hi - lo > cfg.bisection_tol) {
    const double mid = 0.5 * (lo + hi);
    if (positive(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  rep.phi_star = lo;
  rep.capped = false;
  rep.limiting_type = fail_type;
  rep.argmin_x = fail_x;
  rep.all_evaluations_count = evals;
  return rep;
}

TwoPointScanReport two_point_scan(const FunctionalParams& p, double phi, long long samples,
                                  std::uint64_t seed, const MinimizerConfig& cfg) {
  if (!(phi > 0.0 && phi < 0.5)) throw DomainError("two_point_scan needs phi in (0, 1/2)");
  if (samples < 1) throw DomainError("samples must be positive");
  TwoPointScanReport rep;
  rep.samples = samples;
  rep.assertion_mode = p.k >= 3;
  rep.type_minimum = min_over_types(p, phi, cfg).min_value;

  std::mt19937_64 gen(seed);
  // open-interval draws keep the support strictly interior
  std::uniform_real_distribution<double> unif(1e-9, 1.0 - 1e-9);
  double best = std::numeric_limits<double>::infinity();
  double bx = 0.0, by = 0.0;
  for (long long s = 0; s < samples; ++s) {
    // mean constraint p*x + (1-p)*y = phi with 0 < y < phi < x < 1
    const double y = phi * unif(gen);
    const double x = phi + (1.0 - phi) * unif(gen);
    const double mass_x = (phi - y) / (x - y);
    const double v =
        functional::F(p, DiscreteMeasure({{y, 1.0 - mass_x}, {x, mass_x}}));
    if (v < best) {
      best = v;
      bx = x;
      by = y;
    }
  }
  rep.sampled_minimum = best;
  rep.worst_gap = best - rep.type_minimum;
  rep.worst_x = bx;
  rep.worst_y = by;
  rep.pass = rep.sampled_minimum >= rep.type_minimum - 1e-7;
  return rep;
}

std::vector<std::pair<int, int>> make_scan_cells(int k_lo, int k_hi,
                                                 const std::vector<int>& m_list) {
  if (k_lo < 1 || k_hi < k_lo) throw DomainError("bad k range");
  std::vector<std::pair<int, int>> cells;
  for (int k = k_lo; k <= k_hi; ++k) {
    if (m_list.empty()) {
      const int cap = static_cast<int>(std::sqrt(static_cast<double>(k)) + 1e-9);
      for (int m = 1; m <= cap; ++m) cells.emplace_back(k, m);
    } else {
      for (int m : m_list) {
        if (m < 1) throw DomainError("m must be >= 1");
        cells.emplace_back(k, m);
      }
    }
  }
  return cells;
}

std::vector<ThresholdReport> scan_km(const std::vector<std::pair<int, int>>& cells,
                                     const ThresholdConfig& cfg, int jobs) {
  std::vector<ThresholdReport> rows(cells.size());
  if (jobs < 1) jobs = 1;
  jobs = std::min<std::size_t>(jobs, cells.size());
  auto work = [&](std::size_t start) {
    for (std::size_t i = start; i < cells.size(); i += static_cast<std::size_t>(jobs)) {
      rows[i] = threshold_phi({cells[i].first, cells[i].second}, cfg);
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(work, static_cast<std::size_t>(j));
    for (auto& t : pool) t.join();
  }
  return rows;
}

namespace {

std::string fmt_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

std::string to_json(const ThresholdReport& r) {
  nlohmann::json doc{{"k", r.k},
                     {"m", r.m},
                     {"phi_star", r.phi_star},
                     {"capped", r.capped},
                     {"grid", r.grid_points},
                     {"tol", r.bisection_tolerance},
                     {"evaluations", r.all_evaluations_count},
                     {"flags", r.flags}};
  doc["limiting_type"] = r.limiting_type ? nlohmann::json(to_string(*r.limiting_type))
                                         : nlohmann::json(nullptr);
  doc["argmin_x"] = r.argmin_x ? nlohmann::json(*r.argmin_x) : nlohmann::json(nullptr);
  return doc.dump();
}

std::string csv_header() { return "k,m,phi_star,limiting_type,argmin_x,grid,tol,flags"; }

std::string to_csv_row(const ThresholdReport& r) {
  std::ostringstream os;
  os << r.k << ',' << r.m << ',' << fmt_double(r.phi_star) << ','
     << (r.limiting_type ? to_string(*r.limiting_type) : "") << ','
     << (r.argmin_x ? fmt_double(*r.argmin_x) : "") << ',' << r.grid_points << ','
     << fmt_double(r.bisection_tolerance) << ',';
  for (std::size_t i = 0; i < r.flags.size(); ++i) {
    if (i) os << ';';
    os << r.flags[i];
  }
  return os.str();
}

}  // namespace frankl::optimizer
