#pragma once

#include <utility>
#include <vector>

#include "franklforge/errors.hpp"
#include "franklforge/families.hpp"
#include "franklforge/rational.hpp"

namespace frankl::functional {

/// Finitely-supported probability measure on [0,1]: positive masses summing
/// to 1 (tolerance 1e-12), atoms at pairwise-distinct locations kept sorted.
class DiscreteMeasure {
 public:
  /// Merges coincident atoms, drops zero masses, validates the invariants.
  explicit DiscreteMeasure(std::vector<std::pair<double, double>> atoms);

  static DiscreteMeasure point(double x);

  const std::vector<std::pair<double, double>>& atoms() const { return atoms_; }
  double mean() const;

 private:
  std::vector<std::pair<double, double>> atoms_;  // (location, mass)
};

/// Convex combination lam*a + (1-lam)*b.
DiscreteMeasure mix(const DiscreteMeasure& a, const DiscreteMeasure& b, double lam);

/// Exact-atom to float conversion point (locations/masses both rational).
DiscreteMeasure to_discrete_measure(const std::vector<std::pair<Rational, Rational>>& atoms);

struct FunctionalParams {
  int k = 1;
  int m = 1;

  /// k >= 5 and m <= sqrt(k): the regime in which positivity of F on mean-phi
  /// measures with phi < 1/2 is asserted.
  bool in_positive_regime() const { return k >= 5 && m * m <= k; }
};

/// h_{k,m}(t) = -kt log t - (1-kt) log(1-kt) + (1-kt) log m on [0, 1/k].
/// 0 log 0 = 0 at both endpoints; DomainError beyond 1e-12 slack.
double h(const FunctionalParams& p, double t);

/// The k+m-level entropy kernel
///   g_{k,m}(x,y) = -(1-kx)(1-ky) log((1-kx)(1-ky))
///                  - (x+y+(k(k-1)/2-1)xy) log(...)
///                  - sum_{j=1}^{k-1} (x+y-(2k-j+1)xy) log(...)
///                  + (1-kx)(1-ky) log m
/// for x, y in [0, 1/k]. Log arguments within [-1e-12, 0] are treated as
/// exactly 0; anything more negative is a hard DomainError.
double g(const FunctionalParams& p, double x, double y);

/// F_{k,m}(mu) = E_{(x,y)~mu x mu} g(x/k, y/k) - E_{x~mu} h(x/k).
double F(const FunctionalParams& p, const DiscreteMeasure& mu);

/// F on the point measure delta_phi, written out as an explicit closed form.
/// Serves as an independent code path from F(p, DiscreteMeasure::point(phi)).
double F_type1(const FunctionalParams& p, double phi);

/// F on (1 - phi/x) delta_0 + (phi/x) delta_x for x in [phi, 1]; equals
/// F_type1 at x = phi. Evaluated through the general F.
double F_type2(const FunctionalParams& p, double phi, double x);

/// F on ((phi-x)/(1-x)) delta_1 + ((1-phi)/(1-x)) delta_x for x in [0, phi];
/// equals F_type1 at x = phi. Evaluated through the general F.
double F_type3(const FunctionalParams& p, double phi, double x);

/// Expanded closed forms for the two-atom families above. Cross-check
/// implementations; tests require agreement with the general evaluator.
double F_type2_closed_form(const FunctionalParams& p, double phi, double x);
double F_type3_closed_form(const FunctionalParams& p, double phi, double x);

/// Explicit lower bound B(k; x, phi) for F on the delta_1-mixture class,
/// with the m-dependence absorbed at the worst case m = sqrt(k). Diagnostic
/// only: B(13; x, phi) > 0 on (0,1/2) x [0,phi] covers all k >= 13.
double B_lower_bound(int k, double x, double phi);

/// sum |A| t^|A| / sum t^|A|: mean energy of the Boltzmann distribution on f.
double boltzmann_expected_energy(const families::SetFamily& f, double t);

}  // namespace frankl::functional
