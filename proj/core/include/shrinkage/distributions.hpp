#pragma once

#include <span>

#include "shrinkage/rng.hpp"

namespace shrinkage {

// Generalized inverse Gaussian with density proportional to
//   z^(lambda-1) exp(-(rho z + chi / z) / 2),  z > 0.
// Proper for (chi>0, rho>0), or (chi=0, rho>0, lambda>0) which is
// Gamma(lambda, rate rho/2), or (chi>0, rho=0, lambda<0) which is an
// inverse gamma.
struct GigParams {
  double chi;
  double rho;
  double lambda;
};

double sample_gamma(RngStream& rng, double shape, double rate = 1.0);

// log of a Gamma(shape, rate) draw, exact when the draw itself would
// underflow (shape far below 1 puts appreciable mass under 1e-308).
double sample_log_gamma(RngStream& rng, double shape, double rate = 1.0);

double sample_beta(RngStream& rng, double a, double b);

// Beta-prime BP(a, b): W = R2/(1-R2) with R2 ~ Beta(a, b).
double sample_beta_prime(RngStream& rng, double a, double b);

// Dirichlet with common or per-coordinate concentration; computed through
// log-gamma draws so tiny concentrations cannot underflow the normalization.
void sample_dirichlet(RngStream& rng, std::span<const double> concentration,
                      std::span<double> out);
void sample_dirichlet(RngStream& rng, double concentration,
                      std::span<double> out);

// Wald / inverse Gaussian with mean mu and shape lam:
//   f(z) = sqrt(lam / (2 pi z^3)) exp(-lam (z - mu)^2 / (2 mu^2 z)).
double sample_inverse_gaussian(RngStream& rng, double mu, double lam);

double sample_gig(RngStream& rng, const GigParams& p);

// log of a GIG draw; exact in regimes where the draw would over/underflow.
double sample_log_gig(RngStream& rng, const GigParams& p);

double sample_student_t(RngStream& rng, double dof);

// 1 / Gamma(shape, rate): handy for the inverse-gamma conditionals.
double sample_inverse_gamma(RngStream& rng, double shape, double rate);

}  // namespace shrinkage
