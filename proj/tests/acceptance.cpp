// Acceptance suite: one pass/fail line per criterion. Exit code is the
// number of failed criteria. Set FRANKL_FORGE_ACCEPT_SKIP_N4=1 to drop the
// extended n=4 exhaustive run from criterion 1.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "franklforge/entropy.hpp"
#include "franklforge/family_io.hpp"
#include "franklforge/optimizer.hpp"

using namespace frankl;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Criterion {
  explicit Criterion(std::string what) : name(std::move(what)) {}

  std::string name;
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << (detail.str().empty() ? "" : "; ") << what;
    }
  }
};

int failures = 0;

void report(Criterion& c, double elapsed) {
  std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name;
  std::cout << " (" << elapsed << " s)";
  if (!c.pass) {
    std::cout << " -- " << c.detail.str();
    ++failures;
  }
  std::cout << '\n' << std::flush;
}

struct Instance {
  families::SetFamily base;
  families::WeightSpec weights;
};

// 50+ deterministic small instances: n <= 2, k_i <= 5, m_i <= 2, lift <= 1e4.
std::vector<Instance> entropy_instances() {
  std::vector<Instance> out;
  std::mt19937_64 gen(20260809);
  while (out.size() < 50) {
    const int n = 1 + static_cast<int>(gen() % 2);
    auto base = families::random_closed_family(n, families::ClosureOp::Intersection, 0.6, gen());
    std::vector<int> kv(n), mv(n);
    for (int i = 0; i < n; ++i) {
      kv[i] = 1 + static_cast<int>(gen() % 5);
      mv[i] = 1 + static_cast<int>(gen() % 2);
    }
    auto w = families::WeightSpec::product(kv, mv);
    if (base.size() < 2) continue;
    if (lifting::LiftedFamily::predicted_size(base, w) > 10000) continue;
    out.push_back({base, w});
  }
  return out;
}

}  // namespace

int main() {
  // 1. exhaustive conjecture check at three weight settings
  {
    Criterion c{"C1 exhaustive check, n in {1,2,3} (+ n=4 extended), (k,m) in {(5,1),(5,2),(9,3)}"};
    auto t0 = Clock::now();
    const std::vector<std::pair<int, int>> specs{{5, 1}, {5, 2}, {9, 3}};
    for (int n = 1; n <= 3; ++n) {
      for (auto [k, m] : specs) {
        auto w = families::WeightSpec::product(std::vector<int>(n, k), std::vector<int>(n, m));
        auto summary = families::run_exhaustive(n, w);
        c.require(summary.failures == 0,
                  "counterexample at n=" + std::to_string(n) + " k=" + std::to_string(k));
        c.require(summary.min_best_abundance >= Rational(1, 2), "min abundance below 1/2");
      }
    }
    const double small_elapsed = seconds_since(t0);
    c.require(small_elapsed < 10.0, "n<=3 sweep exceeded 10 s");
    if (std::getenv("FRANKL_FORGE_ACCEPT_SKIP_N4") == nullptr) {
      auto t4 = Clock::now();
      for (auto [k, m] : specs) {
        auto w = families::WeightSpec::product(std::vector<int>(4, k), std::vector<int>(4, m));
        auto summary = families::run_exhaustive(4, w);
        c.require(summary.failures == 0, "counterexample at n=4 k=" + std::to_string(k));
      }
      c.require(seconds_since(t4) < 300.0, "n=4 sweep exceeded 5 min");
    }
    report(c, seconds_since(t0));
  }

  // 2. threshold reproduction for (4,2) and (5,3)
  {
    Criterion c{"C2 thresholds: phi*(4,2) >= 0.469-1e-3 and phi*(5,3) >= 0.385-1e-3"};
    auto t0 = Clock::now();
    auto ta = Clock::now();
    auto r42 = optimizer::threshold_phi({4, 2});
    c.require(r42.phi_star >= 0.469 - 1e-3, "phi*(4,2) = " + std::to_string(r42.phi_star));
    c.require(seconds_since(ta) < 120.0, "(4,2) run exceeded 2 min");
    auto tb = Clock::now();
    auto r53 = optimizer::threshold_phi({5, 3});
    c.require(r53.phi_star >= 0.385 - 1e-3, "phi*(5,3) = " + std::to_string(r53.phi_star));
    c.require(seconds_since(tb) < 120.0, "(5,3) run exceeded 2 min");
    report(c, seconds_since(t0));
  }

  // 3. positivity across the whole k in 5..12, m <= sqrt(k) regime
  {
    Criterion c{"C3 scan k in 5..12, m <= sqrt(k): phi* capped at 0.5"};
    auto t0 = Clock::now();
    auto rows = optimizer::scan_km(optimizer::make_scan_cells(5, 12));
    for (const auto& r : rows) {
      c.require(r.capped && r.phi_star == 0.5,
                "k=" + std::to_string(r.k) + " m=" + std::to_string(r.m) + " not capped");
    }
    report(c, seconds_since(t0));
  }

  // 4 and 5 share the instance set
  const auto instances = entropy_instances();

  {
    Criterion c{"C4 entropy identity residuals < 1e-9 on 50 random instances"};
    auto t0 = Clock::now();
    double worst = 0.0;
    for (const auto& inst : instances) {
      lifting::LiftedFamily lf(inst.base, inst.weights, 10000);
      auto basic = entropy::verify_basic_inequality(lf);
      c.require(basic.pass, "basic inequality violated");
      for (int i = 1; i <= lf.n(); ++i) {
        for (const auto& rep : {entropy::verify_hf(lf, i), entropy::verify_hfmin(lf, i),
                                entropy::verify_difference_identity(lf, i)}) {
          worst = std::max(worst, rep.residual);
          c.require(rep.pass, rep.check + " residual " + std::to_string(rep.residual));
        }
      }
    }
    c.detail << "max residual " << worst;
    const double elapsed = seconds_since(t0);
    c.require(elapsed < 60.0, "entropy sweep exceeded 1 min");
    std::cout << "       C4 max residual: " << worst << '\n';
    report(c, elapsed);
  }

  {
    Criterion c{"C5 distribution bridge: exact marginals and k_i*P[X_i=0] = f_i"};
    auto t0 = Clock::now();
    for (const auto& inst : instances) {
      lifting::LiftedFamily lf(inst.base, inst.weights, 10000);
      Rational total = 0;
      for (auto a : inst.base.sets()) total += families::weight(a, inst.weights);
      for (auto a : inst.base.sets()) {
        c.require(lifting::base_marginal(lf, a) == families::weight(a, inst.weights) / total,
                  "marginal mismatch");
      }
      const auto sup = inst.base.support();
      for (int i = 1; i <= lf.n(); ++i) {
        // k_i * P[X_i = 0] from a direct count over the enumerated lift
        std::uint64_t zero_rows = 0;
        for (std::uint64_t r = 0; r < lf.size(); ++r) {
          if (lf.tuple(r)[i - 1] == 0) ++zero_rows;
        }
        const Rational bridged(BigInt(inst.weights.kvec()[i - 1]) * zero_rows,
                               BigInt(lf.size()));
        c.require(lifting::mu_i(lf, i).mean() == bridged, "mu mean vs direct count");
        if ((sup >> (i - 1)) & 1) {
          c.require(bridged == families::abundance(inst.base, inst.weights, i),
                    "abundance bridge mismatch");
        } else {
          c.require(bridged == Rational(1), "degenerate bridge mismatch");
        }
      }
    }
    report(c, seconds_since(t0));
  }

  // 6. concavity probes
  {
    Criterion c{"C6 concavity: 1000 equal-mean mixture probes, k in 3..8"};
    auto t0 = Clock::now();
    std::mt19937_64 gen(17);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    auto random_measure = [&](double target_mean) {
      const int atoms = 2 + static_cast<int>(gen() % 4);
      std::vector<std::pair<double, double>> av;
      double mass_left = 1.0;
      for (int i = 0; i < atoms - 1; ++i) {
        const double mass = mass_left * unif(gen);
        av.emplace_back(unif(gen), mass);
        mass_left -= mass;
      }
      av.emplace_back(unif(gen), mass_left);
      double mean = 0.0;
      for (auto& [x, p] : av) mean += x * p;
      // affine transport onto the target mean, staying inside [0,1]
      for (auto& [x, p] : av) {
        if (mean >= target_mean) {
          x = mean > 0 ? x * (target_mean / mean) : target_mean;
        } else {
          x = 1.0 - (1.0 - x) * (1.0 - target_mean) / (1.0 - mean);
        }
      }
      return functional::DiscreteMeasure(std::move(av));
    };
    int violations = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      const int k = 3 + static_cast<int>(gen() % 6);
      const int m = 1 + static_cast<int>(gen() % 3);
      const double phi = 0.05 + 0.9 * unif(gen);
      functional::FunctionalParams p{k, m};
      auto mu1 = random_measure(phi);
      auto mu2 = random_measure(phi);
      const double lam = unif(gen);
      const double mixed = functional::F(p, functional::mix(mu1, mu2, lam));
      const double straight =
          lam * functional::F(p, mu1) + (1.0 - lam) * functional::F(p, mu2);
      if (mixed < straight - 1e-9) ++violations;
    }
    c.require(violations == 0, std::to_string(violations) + " concavity violations");
    report(c, seconds_since(t0));
  }

  // 7. interior two-point measures never beat the boundary classes
  {
    Criterion c{"C7 minimizer classification: 10^4 interior samples per (k, phi) cell"};
    auto t0 = Clock::now();
    for (int k : {3, 5, 8}) {
      for (double phi : {0.1, 0.3, 0.45}) {
        auto rep = optimizer::two_point_scan({k, 1}, phi, 10000, 97 + k);
        c.require(rep.pass, "undercut at k=" + std::to_string(k) + " phi=" +
                                std::to_string(phi) + " gap=" + std::to_string(rep.worst_gap));
      }
    }
    report(c, seconds_since(t0));
  }

  // 8. exact anchors
  {
    Criterion c{"C8 anchors: F(delta_0)=0, h(1/k)=log k, g(0,0)=log m, B(13)>0 on 200x200"};
    auto t0 = Clock::now();
    for (int k : {1, 2, 5, 9, 13}) {
      for (int m : {1, 2, 3}) {
        functional::FunctionalParams p{k, m};
        c.require(std::abs(functional::F(p, functional::DiscreteMeasure::point(0.0))) <= 1e-12,
                  "F(delta_0) != 0");
        c.require(std::abs(functional::h(p, 1.0 / k) - std::log(double(k))) <= 1e-12,
                  "h(1/k) anchor");
        c.require(std::abs(functional::g(p, 0.0, 0.0) - std::log(double(m))) <= 1e-12,
                  "g(0,0) anchor");
      }
    }
    double min_b = 1e100;
    for (int i = 1; i <= 200; ++i) {
      const double phi = 0.5 * i / 201.0;
      for (int j = 0; j < 200; ++j) {
        min_b = std::min(min_b, functional::B_lower_bound(13, phi * j / 199.0, phi));
      }
    }
    c.require(min_b > 0.0, "B(13) grid minimum " + std::to_string(min_b));
    std::cout << "       C8 min B(13;x,phi) on grid: " << min_b << '\n';
    report(c, seconds_since(t0));
  }

  // 9. exploratory uniform-case threshold
  {
    Criterion c{"C9 phi*(1,1) = 0.3820 +/- 2e-3 with the heuristic flag"};
    auto t0 = Clock::now();
    auto r = optimizer::threshold_phi({1, 1});
    c.require(std::abs(r.phi_star - 0.3820) <= 2e-3, "phi* = " + std::to_string(r.phi_star));
    bool heuristic = false;
    for (const auto& f : r.flags) {
      heuristic = heuristic || f.find("heuristic") != std::string::npos;
    }
    c.require(heuristic, "heuristic flag missing");
    std::cout << "       C9 phi*(1,1) = " << r.phi_star << " vs (3-sqrt(5))/2 = "
              << (3.0 - std::sqrt(5.0)) / 2.0 << '\n';
    report(c, seconds_since(t0));
  }

  std::cout << (failures == 0 ? "all criteria passed" : "criteria failed") << '\n';
  return failures;
}
