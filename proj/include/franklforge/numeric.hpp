#pragma once

#include <cmath>

namespace frankl {

/// Kahan compensated accumulator. Entropy and functional sums mix terms of
/// very different magnitude; plain summation would eat into the 1e-9
/// residual tolerances.
class KahanSum {
 public:
  void add(double v) {
    double y = v - compensation_;
    double t = sum_ + y;
    compensation_ = (t - sum_) - y;
    sum_ = t;
  }

  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

/// x log x with the 0 log 0 = 0 convention (natural log).
inline double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace frankl
