#pragma once

#include <string>
#include <variant>

namespace shrinkage {

// Global-local shrinkage prior with a beta-prime global variance and a
// Dirichlet split across coordinates. `reduced` records that a = p * a_pi,
// in which case the implied prior on the fit fraction R2 is Beta(a, b).
struct R2d2Params {
  double a;
  double b;
  double a_pi;
  bool reduced = false;
};

R2d2Params make_r2d2_full(double a, double b, double a_pi);
R2d2Params make_r2d2_reduced(int p, double b, double a_pi);

enum class R2d2Default {
  half_half,       // a = 1/2, b = 1/2, a_pi = 1/(2p)
  p_over_n_b_half, // a = p/n, b = 1/2, a_pi = 1/n
  p_over_n_b_tenth,// a = p/n, b = 1/10, a_pi = 1/n
  unit,            // a = 1, b = 1, a_pi = 1/p
};

R2d2Params default_r2d2(R2d2Default which, int p, int n);

struct ImpliedR2 {
  bool is_beta;  // false: the Dirichlet construction does not collapse
  double a;
  double b;
};

ImpliedR2 implied_r2_prior(const R2d2Params& prior);

// Closed-form E|beta_j|^b for the marginal coefficient prior:
//   b Gamma(b/2) Gamma(a_pi + b/2) / (2^(b/2) Gamma(a_pi)).
double r2d2_abs_moment(const R2d2Params& prior);

// Double-exponential local scales with Gamma(a_d, 1/2) mixing.
struct DlParams {
  double a_d;
};

// Half-Cauchy local scales; tau scales the global half-Cauchy. When
// sample_global is false the global scale stays frozen at tau.
struct HsParams {
  double tau = 1.0;
  bool sample_global = true;
};

struct HsPlusParams {
  double tau = 1.0;
  bool sample_global = true;
};

struct SigmaPrior {
  double a1 = 0.001;
  double b1 = 0.001;
};

using PriorSpec = std::variant<R2d2Params, DlParams, HsParams, HsPlusParams>;

std::string prior_label(const PriorSpec& prior);

void validate(const R2d2Params& p);
void validate(const DlParams& p);
void validate(const HsParams& p);
void validate(const HsPlusParams& p);
void validate(const SigmaPrior& p);
void validate_prior(const PriorSpec& p);

}  // namespace shrinkage
