#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "shrinkage/priors.hpp"
#include "shrinkage/rng.hpp"

namespace shrinkage {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Raised when a conditional draw or linear solve cannot be completed;
// run_chain rethrows with the iteration index prepended.
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// Coefficient draw strategy. The direct route factors the p x p system
// X'X + S^{-1}; the conjugation route samples through the n x n matrix
// X S X' + I and is exact as well, preferable when p > n.
enum class BetaRoute { automatic, direct, woodbury };

struct McmcConfig {
  int iterations = 10000;  // total sweeps, burn-in included
  int burnin = 5000;
  int thin = 1;
  BetaRoute route = BetaRoute::automatic;
  std::optional<double> fixed_sigma2;  // freeze the noise variance when set
};

void validate(const McmcConfig& c);

// Design matrix with the cross-products the coefficient draw needs.
// Callers are responsible for any centering/scaling beforehand.
struct DesignCache {
  MatrixXd x;
  VectorXd y;
  VectorXd xty;
  MatrixXd xtx;  // only when the resolved route is direct
  bool direct = true;

  DesignCache(MatrixXd x_in, VectorXd y_in, BetaRoute route);
  int n() const { return int(x.rows()); }
  int p() const { return int(x.cols()); }
};

// One exact draw from N(V X'y, sigma2 V), V = (X'X + S^{-1})^{-1}, where
// s_diag holds the diagonal of S (prior covariance is sigma2 * S).
VectorXd sample_coefficients(const DesignCache& d, const VectorXd& s_diag,
                             double sigma2, RngStream& rng);

// latent states, one per prior family

struct R2d2State {
  VectorXd beta;
  double sigma2 = 1.0;
  VectorXd psi;   // exponential local scales
  VectorXd phi;   // simplex allocation
  double omega = 1.0;
  double xi = 1.0;
};

struct DlState {
  VectorXd beta;
  double sigma2 = 1.0;
  VectorXd psi;  // exponential mixing scales of the Laplace kernel
  VectorXd phi;  // simplex allocation
  double tau = 1.0;
};

struct HsState {
  VectorXd beta;
  double sigma2 = 1.0;
  VectorXd lambda2;  // squared local scales
  VectorXd nu;       // auxiliary inverse-gamma layer for lambda
  double tau2 = 1.0;
  double zeta = 1.0;  // auxiliary layer for tau
};

struct HsPlusState {
  VectorXd beta;
  double sigma2 = 1.0;
  VectorXd lambda2;
  VectorXd nu;
  VectorXd eta2;  // extra half-Cauchy layer, squared
  VectorXd rho;   // auxiliary layer for eta
  double tau2 = 1.0;
  double zeta = 1.0;
};

R2d2State r2d2_init(const R2d2Params& prior, int p);
DlState dl_init(const DlParams& prior, int p);
HsState hs_init(const HsParams& prior, int p);
HsPlusState hsplus_init(const HsPlusParams& prior, int p);

// shrinkage scale diagonals entering the coefficient draw (floored copies)
VectorXd r2d2_shrink_scale(const R2d2State& st);
VectorXd dl_shrink_scale(const DlState& st);
VectorXd hs_shrink_scale(const HsState& st);
VectorXd hsplus_shrink_scale(const HsPlusState& st);

// individual conditional updates (exposed for step-level testing)
void r2d2_step_beta(R2d2State& st, const DesignCache& d, RngStream& rng);
void r2d2_step_sigma2(R2d2State& st, const DesignCache& d,
                      const SigmaPrior& sp, RngStream& rng);
void r2d2_step_psi(R2d2State& st, RngStream& rng);
void r2d2_step_omega(R2d2State& st, const R2d2Params& prior, RngStream& rng);
void r2d2_step_xi(R2d2State& st, const R2d2Params& prior, RngStream& rng);
void r2d2_step_phi(R2d2State& st, const R2d2Params& prior, RngStream& rng);

// full sweeps leaving each posterior invariant
void r2d2_sweep(R2d2State& st, const R2d2Params& prior, const SigmaPrior& sp,
                const DesignCache& d, const McmcConfig& mc, RngStream& rng);
void dl_sweep(DlState& st, const DlParams& prior, const SigmaPrior& sp,
              const DesignCache& d, const McmcConfig& mc, RngStream& rng);
void hs_sweep(HsState& st, const HsParams& prior, const SigmaPrior& sp,
              const DesignCache& d, const McmcConfig& mc, RngStream& rng);
void hsplus_sweep(HsPlusState& st, const HsPlusParams& prior,
                  const SigmaPrior& sp, const DesignCache& d,
                  const McmcConfig& mc, RngStream& rng);

struct PosteriorDraws {
  MatrixXd beta;    // retained x p
  VectorXd sigma2;  // retained
  VectorXd global;  // retained: omega, tau, or tau2 depending on the prior
  int total_iterations = 0;
  int burnin = 0;
  int thin = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::string prior;

  int retained() const { return int(beta.rows()); }
};

struct FitSummary {
  VectorXd mean;
  VectorXd sd;
  VectorXd t_stat;  // mean / sd per coefficient
  VectorXd q025;
  VectorXd q500;
  VectorXd q975;
  double sigma2_mean = 0.0;
  double global_mean = 0.0;
};

PosteriorDraws run_chain(const PriorSpec& prior, const SigmaPrior& sp,
                         const MatrixXd& x, const VectorXd& y,
                         const McmcConfig& mc, std::uint64_t seed,
                         std::uint64_t stream);

FitSummary summarize(const PosteriorDraws& draws);

}  // namespace shrinkage
