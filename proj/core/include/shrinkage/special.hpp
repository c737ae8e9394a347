#pragma once

namespace shrinkage {

struct EvalOptions {
  double rel_tol = 1e-14;
  int max_terms = 500;
};

// log Gamma(x) for x > 0. Thread-safe (does not touch signgam).
double log_gamma(double x);

double log_beta(double a, double b);

// Lower regularized incomplete gamma P(a, x), a > 0, x >= 0.
double reg_inc_gamma(double a, double x, const EvalOptions& opt = {});

// P(a, exp(log_x)), usable when exp(log_x) would underflow.
double reg_inc_gamma_log_arg(double a, double log_x, const EvalOptions& opt = {});

// Modified Bessel function of the second kind, nu >= 0, x > 0.
// Overflows to +inf for extreme (nu, x); use log_bessel_k there.
double bessel_k(double nu, double x, const EvalOptions& opt = {});

// exp(x) * K_nu(x): finite for large x where K itself underflows.
double bessel_k_scaled(double nu, double x, const EvalOptions& opt = {});

double log_bessel_k(double nu, double x, const EvalOptions& opt = {});

// Exponential integral E1(x), x > 0.
double exp_integral_e1(double x, const EvalOptions& opt = {});

// exp(x) * E1(x): finite for large x.
double exp_integral_e1_scaled(double x, const EvalOptions& opt = {});

}  // namespace shrinkage
