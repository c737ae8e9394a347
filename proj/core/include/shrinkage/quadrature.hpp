#pragma once

#include <functional>
#include <vector>

namespace shrinkage {

struct QuadResult {
  double value = 0.0;
  double abs_err = 0.0;
  long evals = 0;
  bool converged = true;
};

using Integrand = std::function<double(double)>;

// Adaptive Simpson on [a, b].
QuadResult integrate(const Integrand& f, double a, double b,
                     double rel_tol = 1e-10, double abs_tol = 0.0);

// Integrate over [a, b] split at the given interior breakpoints. Useful when
// the integrand has known kinks or spans many decades.
QuadResult integrate_segmented(const Integrand& f, std::vector<double> knots,
                               double rel_tol = 1e-10);

// [a, b] with a > 0, b possibly huge: splits into per-decade segments first.
// Handles integrable endpoint singularities at a and slowly varying tails.
QuadResult integrate_decades(const Integrand& f, double a, double b,
                             double rel_tol = 1e-10);

// [a, inf) for integrands with (at least) geometric tail decay: marches
// geometrically growing segments until their contribution is negligible.
QuadResult integrate_upper_tail(const Integrand& f, double a,
                                double rel_tol = 1e-10);

}  // namespace shrinkage
