#include "franklforge/functional.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "franklforge/numeric.hpp"

namespace frankl::functional {

namespace {

constexpr double kArgSlack = 1e-12;   // clamp window for log arguments
constexpr double kMassTol = 1e-12;    // measure mass-sum tolerance

// Clamp tiny negatives produced by cancellation; reject anything worse.
double guarded(double z, const char* what) {
  if (z < -kArgSlack) {
    throw DomainError(std::string(what) + " produced log argument " + std::to_string(z));
  }
  return z > 0.0 ? z : 0.0;
}

void check_params(const FunctionalParams& p) {
  if (p.k < 1 || p.m < 1) throw DomainError("k and m must be >= 1");
}

double clamp_unit(double v, const char* what) {
  if (v < -kArgSlack || v > 1.0 + kArgSlack) {
    throw DomainError(std::string(what) + " must lie in [0, 1], got " + std::to_string(v));
  }
  return std::clamp(v, 0.0, 1.0);
}

}  // namespace

DiscreteMeasure::DiscreteMeasure(std::vector<std::pair<double, double>> atoms)
    : atoms_(std::move(atoms)) {
  for (auto& [x, mass] : atoms_) {
    x = clamp_unit(x, "atom location");
    if (mass < -kMassTol) throw DomainError("negative atom mass " + std::to_string(mass));
  }
  std::sort(atoms_.begin(), atoms_.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto& [x, mass] : atoms_) {
    if (mass <= 0.0) continue;
    if (!merged.empty() && merged.back().first == x) {
      merged.back().second += mass;
    } else {
      merged.emplace_back(x, mass);
    }
  }
  atoms_ = std::move(merged);
  double total = 0.0;
  for (const auto& [x, mass] : atoms_) total += mass;
  if (std::abs(total - 1.0) > kMassTol) {
    throw DomainError("atom masses sum to " + std::to_string(total) + ", expected 1");
  }
}

DiscreteMeasure DiscreteMeasure::point(double x) { return DiscreteMeasure({{x, 1.0}}); }

double DiscreteMeasure::mean() const {
  KahanSum s;
  for (const auto& [x, mass] : atoms_) s.add(x * mass);
  return s.value();
}

DiscreteMeasure mix(const DiscreteMeasure& a, const DiscreteMeasure& b, double lam) {
  if (lam < 0.0 || lam > 1.0) throw DomainError("mixture weight outside [0, 1]");
  std::vector<std::pair<double, double>> atoms;
  for (const auto& [x, mass] : a.atoms()) atoms.emplace_back(x, lam * mass);
  for (const auto& [x, mass] : b.atoms()) atoms.emplace_back(x, (1.0 - lam) * mass);
  return DiscreteMeasure(std::move(atoms));
}

DiscreteMeasure to_discrete_measure(const std::vector<std::pair<Rational, Rational>>& atoms) {
  std::vector<std::pair<double, double>> out;
  out.reserve(atoms.size());
  for (const auto& [x, mass] : atoms) out.emplace_back(to_double(x), to_double(mass));
  return DiscreteMeasure(std::move(out));
}

double h(const FunctionalParams& p, double t) {
  check_params(p);
  const double hi = 1.0 / p.k;
  if (t < -kArgSlack || t > hi + kArgSlack) {
    throw DomainError("h argument " + std::to_string(t) + " outside [0, 1/k]");
  }
  t = std::clamp(t, 0.0, hi);
  const double kt = std::min(p.k * t, 1.0);
  double s = 0.0;
  if (t > 0.0) s -= kt * std::log(t);
  s -= xlogx(1.0 - kt);
  s += (1.0 - kt) * std::log(static_cast<double>(p.m));
  return s;
}

double g(const FunctionalParams& p, double x, double y) {
  check_params(p);
  const double hi = 1.0 / p.k;
  if (x < -kArgSlack || x > hi + kArgSlack || y < -kArgSlack || y > hi + kArgSlack) {
    throw DomainError("g arguments outside [0, 1/k]");
  }
  x = std::clamp(x, 0.0, hi);
  y = std::clamp(y, 0.0, hi);
  const double c = p.k * (p.k - 1) / 2.0 - 1.0;
  const double ones = guarded((1.0 - p.k * x) * (1.0 - p.k * y), "g ones-level");
  KahanSum s;
  s.add(-xlogx(ones));
  s.add(-xlogx(guarded(x + y + c * x * y, "g zero-level")));
  for (int j = 1; j < p.k; ++j) {
    s.add(-xlogx(guarded(x + y - (2.0 * p.k - j + 1.0) * x * y, "g nilpotent-level")));
  }
  s.add(ones * std::log(static_cast<double>(p.m)));
  return s.value();
}

double F(const FunctionalParams& p, const DiscreteMeasure& mu) {
  check_params(p);
  KahanSum s;
  const auto& atoms = mu.atoms();
  for (const auto& [x, px] : atoms) {
    for (const auto& [y, py] : atoms) {
      s.add(px * py * g(p, x / p.k, y / p.k));
    }
  }
  for (const auto& [x, px] : atoms) {
    s.add(-px * h(p, x / p.k));
  }
  return s.value();
}

double F_type1(const FunctionalParams& p, double phi) {
  check_params(p);
  phi = clamp_unit(phi, "phi");
  const double k = p.k;
  const double c = k * (k - 1) / 2.0 - 1.0;
  KahanSum s;
  s.add(-xlogx(guarded((1.0 - phi) * (1.0 - phi), "type-1 ones-level")));
  s.add(-xlogx(guarded(2.0 * phi / k + c * phi * phi / (k * k), "type-1 zero-level")));
  for (int j = 1; j < p.k; ++j) {
    s.add(-xlogx(
        guarded(2.0 * phi / k - (2.0 * k - j + 1.0) * phi * phi / (k * k), "type-1 level")));
  }
  if (phi > 0.0) s.add(phi * std::log(phi / k));
  s.add(xlogx(1.0 - phi));
  s.add(-phi * (1.0 - phi) * std::log(static_cast<double>(p.m)));
  return s.value();
}

double F_type2(const FunctionalParams& p, double phi, double x) {
  phi = clamp_unit(phi, "phi");
  x = clamp_unit(x, "x");
  if (x < phi - kArgSlack) throw DomainError("type-2 requires x >= phi");
  x = std::max(x, phi);
  if (x == 0.0) return F(p, DiscreteMeasure::point(0.0));  // phi == 0 degenerate
  const double mass = phi / x;
  if (mass >= 1.0) return F(p, DiscreteMeasure::point(x));
  return F(p, DiscreteMeasure({{0.0, 1.0 - mass}, {x, mass}}));
}

double F_type3(const FunctionalParams& p, double phi, double x) {
  phi = clamp_unit(phi, "phi");
  x = clamp_unit(x, "x");
  if (x > phi + kArgSlack) throw DomainError("type-3 requires x <= phi");
  x = std::min(x, phi);
  if (x >= 1.0) throw DomainError("type-3 requires x < 1");
  const double q = (phi - x) / (1.0 - x);
  if (q <= 0.0) return F(p, DiscreteMeasure::point(x));
  return F(p, DiscreteMeasure({{x, 1.0 - q}, {1.0, q}}));
}

double F_type2_closed_form(const FunctionalParams& p, double phi, double x) {
  check_params(p);
  phi = clamp_unit(phi, "phi");
  x = clamp_unit(x, "x");
  if (x < phi - kArgSlack) throw DomainError("type-2 requires x >= phi");
  x = std::max(x, phi);
  if (x == 0.0) return 0.0;
  const double k = p.k;
  const double c = k * (k - 1) / 2.0 - 1.0;
  const double mass = phi / x;
  KahanSum s;
  s.add(-mass * mass * xlogx(guarded((1.0 - x) * (1.0 - x), "type-2 ones-level")));
  s.add(-mass * mass * xlogx(guarded(2.0 * x / k + c * x * x / (k * k), "type-2 zero-level")));
  for (int j = 1; j < p.k; ++j) {
    s.add(-mass * mass *
          xlogx(guarded(2.0 * x / k - (2.0 * k - j + 1.0) * x * x / (k * k), "type-2 level")));
  }
  double inner = x * std::log(x / k) + xlogx(1.0 - x);
  s.add(-mass * (1.0 - 2.0 * mass) * inner);
  s.add(-phi * (1.0 - phi) * std::log(static_cast<double>(p.m)));
  return s.value();
}

double F_type3_closed_form(const FunctionalParams& p, double phi, double x) {
  check_params(p);
  phi = clamp_unit(phi, "phi");
  x = clamp_unit(x, "x");
  if (x > phi + kArgSlack) throw DomainError("type-3 requires x <= phi");
  x = std::min(x, phi);
  if (x >= 1.0) throw DomainError("type-3 requires x < 1");
  const double k = p.k;
  const double c = k * (k - 1) / 2.0 - 1.0;
  const double q = (phi - x) / (1.0 - x);  // mass at 1
  const double r = (1.0 - phi) / (1.0 - x);  // mass at x
  const double lk = std::log(k);
  KahanSum s;
  // cross term: the delta_1 x delta_x levels
  {
    const double a = x / k + 1.0 / k + c * x / (k * k);
    s.add(-2.0 * q * r * (xlogx(a) + lk * (k - 1.0) * (k * (x - 2.0) + 2.0 * x) / (2.0 * k * k)));
    KahanSum t2;
    for (int j = 0; j < p.k; ++j) {
      t2.add(xlogx(1.0 - (1.0 - static_cast<double>(j) / k) * x) / k);
    }
    s.add(-2.0 * q * r * t2.value());
    s.add(2.0 * q * r * xlogx(1.0 - x / k) / k);
  }
  // delta_x x delta_x levels
  {
    s.add(-r * r *
          (xlogx(guarded((1.0 - x) * (1.0 - x), "type-3 ones-level")) +
           xlogx(guarded(2.0 * x / k + c * x * x / (k * k), "type-3 zero-level")) +
           lk * x * (k - 1.0) * (2.0 * x + k * (3.0 * x - 4.0)) / (2.0 * k * k)));
    KahanSum t5;
    for (int j = 0; j < p.k; ++j) {
      const double coeff = (2.0 * x - (2.0 - static_cast<double>(j) / k) * x * x) / k;
      t5.add(coeff * std::log(2.0 - (2.0 - static_cast<double>(j) / k) * x));
    }
    s.add(-r * r * t5.value());
    if (x > 0.0) {
      s.add(std::log(x) * r * r * x * (x + k * (3.0 * x - 4.0)) / (2.0 * k));
    }
    s.add(r * r * xlogx(guarded(2.0 * x - (k + 1.0) * x * x / k, "type-3 tail")) / k);
  }
  // delta_1 x delta_1 levels
  {
    const double b = 2.0 / k + c / (k * k);
    s.add(-q * q * (xlogx(b) - lk * (k - 1.0) * (k - 2.0) / (2.0 * k * k)));
    KahanSum t9;
    for (int j = 0; j < p.k; ++j) {
      t9.add(xlogx(static_cast<double>(j) / k) / k);
    }
    s.add(-q * q * t9.value());
    s.add(q * q * xlogx((k - 1.0) / k) / k);
  }
  // entropy terms of the two atoms
  double inner = xlogx(1.0 - x);
  if (x > 0.0) inner += x * std::log(x / k);
  s.add(r * inner);
  s.add(-q * lk);
  s.add(-phi * (1.0 - phi) * std::log(static_cast<double>(p.m)));
  return s.value();
}

double B_lower_bound(int k, double x, double phi) {
  if (k < 1) throw DomainError("k must be >= 1");
  if (!(phi > 0.0 && phi < 0.5)) throw DomainError("B needs phi in (0, 1/2)");
  if (x < -kArgSlack || x > phi + kArgSlack) throw DomainError("B needs x in [0, phi]");
  x = std::clamp(x, 0.0, phi);
  const double kk = k;
  const double c = kk * (kk - 1.0) / 2.0 - 1.0;
  const double q = (phi - x) / (1.0 - x);
  const double r = (1.0 - phi) / (1.0 - x);
  const double lk = std::log(kk);
  // log(1-x)/x extended continuously by -1 at x = 0
  const double log1mx_over_x = x > 0.0 ? std::log1p(-x) / x : -1.0;
  KahanSum s;
  {
    const double a = x / kk + 1.0 / kk + c * x / (kk * kk);
    s.add(-2.0 * q * r *
          (xlogx(a) + lk * (kk - 1.0) * (kk * (x - 2.0) + 2.0 * x) / (2.0 * kk * kk)));
    s.add(-0.5 * q * r * (-2.0 + x - 2.0 * (1.0 - x) * (1.0 - x) * log1mx_over_x));
    s.add(2.0 * q * r * xlogx(1.0 - x / kk) / kk);
  }
  {
    s.add(-r * r *
          (xlogx((1.0 - x) * (1.0 - x)) + xlogx(2.0 * x / kk + c * x * x / (kk * kk)) +
           lk * x * (kk - 1.0) * (2.0 * x + kk * (3.0 * x - 4.0)) / (2.0 * kk * kk)));
    s.add(-0.25 * r * r *
          (x * (3.0 * x - 4.0) - 8.0 * (1.0 - x) * (1.0 - x) * std::log(2.0 * (1.0 - x)) +
           2.0 * (2.0 - x) * (2.0 - x) * std::log(2.0 - x)));
    if (x > 0.0) {
      s.add(std::log(x) * r * r * x * (x + kk * (3.0 * x - 4.0)) / (2.0 * kk));
    }
    s.add(r * r * xlogx(2.0 * x - (kk + 1.0) * x * x / kk) / kk);
  }
  {
    const double b = 2.0 / kk + c / (kk * kk);
    s.add(-q * q * (xlogx(b) - lk * (kk - 1.0) * (kk - 2.0) / (2.0 * kk * kk)));
    s.add(q * q * xlogx((kk - 1.0) / kk) / kk);
  }
  double inner = xlogx(1.0 - x);
  if (x > 0.0) inner += x * std::log(x / kk);
  s.add(r * inner);
  s.add(-q * lk);
  s.add(-0.5 * phi * (1.0 - phi) * lk);
  return s.value();
}

double boltzmann_expected_energy(const families::SetFamily& f, double t) {
  if (!(t > 0.0 && t <= 1.0)) throw DomainError("t must lie in (0, 1]");
  KahanSum num, den;
  for (families::Bitmask a : f.sets()) {
    const int card = std::popcount(a);
    const double w = std::pow(t, card);
    num.add(card * w);
    den.add(w);
  }
  return num.value() / den.value();
}

}  // namespace frankl::functional
