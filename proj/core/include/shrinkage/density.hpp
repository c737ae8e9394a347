#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "shrinkage/priors.hpp"

namespace shrinkage {

// Marginal coefficient densities under the unit-noise convention. All are
// symmetric in beta; the ones that diverge at the origin return +inf there.

double r2d2_marginal(double beta, const R2d2Params& p, double rel_tol = 1e-10);
double dl_marginal(double beta, const DlParams& p);
double hs_marginal(double beta, double tau = 1.0);
double hsplus_marginal(double beta, double tau = 1.0, double rel_tol = 1e-8);

double marginal_density(const PriorSpec& prior, double beta);
double log_marginal_density(const PriorSpec& prior, double beta);
bool diverges_at_origin(const PriorSpec& prior);

// Origin envelope for the half-Cauchy local prior:
//   log(1 + 4/beta^2) / (2 sqrt(2 pi^3)) <= f <= log(1 + 2/beta^2) / sqrt(2 pi^3).
std::pair<double, double> hs_origin_envelope(double beta);

// Generalized double Pareto, the polynomial-tail reference family.
double gdp_density(double beta, double alpha, double eta);

struct DensityCurve {
  std::vector<double> beta;
  std::vector<double> log_density;
  std::string label;
};

DensityCurve marginal_curve(const PriorSpec& prior, const std::vector<double>& grid);

// Least-squares slope of log f against log beta over a log-spaced grid.
double log_log_slope(const std::function<double(double)>& f, double lo,
                     double hi, int points);

// One-sided prior mass of [0, n^{-1/2}].
double prior_mass_near_zero(const PriorSpec& prior, double n);

double interquartile_range(const PriorSpec& prior);

// Tunes the family's free parameter (r2d2: b, dl: a_d, hs/hs+: tau) until the
// marginal IQR matches the target.
PriorSpec calibrate_iqr(PriorSpec base, double target_iqr = 1.0);

// Quadrature of the marginal over the real line; should be 1.
double normalization(const PriorSpec& prior);

}  // namespace shrinkage
