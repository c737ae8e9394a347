#include "shrinkage/gibbs.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <variant>
#include <vector>

#include "shrinkage/distributions.hpp"

namespace shrinkage {

namespace {

constexpr double kScaleLo = 1e-150;
constexpr double kScaleHi = 1e150;
constexpr double kBetaFloor = 1e-10;  // magnitude floor where a step divides by beta_j

double clamp_scale(double v, const char* what) {
  if (!std::isfinite(v)) throw NumericalError(std::string(what) + " non-finite");
  return std::clamp(v, kScaleLo, kScaleHi);
}

double clamp_mu(double v) { return std::clamp(v, 1e-12, 1e12); }

// floor at 1e-12 * median(s) so one collapsed coordinate cannot make the
// coefficient system singular
VectorXd floored(VectorXd s) {
  std::vector<double> tmp(s.data(), s.data() + s.size());
  auto mid = tmp.begin() + std::ptrdiff_t(tmp.size() / 2);
  std::nth_element(tmp.begin(), mid, tmp.end());
  double floor_v = 1e-12 * *mid;
  if (!(floor_v > 0.0)) floor_v = 1e-300;
  return s.cwiseMax(floor_v);
}

double residual_ss(const DesignCache& d, const VectorXd& beta) {
  return (d.y - d.x * beta).squaredNorm();
}

double step_sigma2_marginal(const DesignCache& d, const VectorXd& beta,
                            const SigmaPrior& sp, RngStream& rng) {
  // conditional for priors whose coefficient scale does not involve sigma2
  double rss = residual_ss(d, beta);
  if (!std::isfinite(rss)) throw NumericalError("residual sum non-finite");
  return clamp_scale(
      sample_inverse_gamma(rng, sp.a1 + 0.5 * d.n(), sp.b1 + 0.5 * rss),
      "sigma2");
}

}  // namespace

void validate(const McmcConfig& c) {
  if (c.iterations < 1) throw std::invalid_argument("mcmc: iterations < 1");
  if (c.burnin < 0 || c.burnin >= c.iterations)
    throw std::invalid_argument("mcmc: burnin must lie in [0, iterations)");
  if (c.thin < 1) throw std::invalid_argument("mcmc: thin < 1");
  if ((c.iterations - c.burnin) % c.thin != 0)
    throw std::invalid_argument(
        "mcmc: iterations - burnin must be a multiple of thin");
  if (c.fixed_sigma2 && !(*c.fixed_sigma2 > 0.0))
    throw std::invalid_argument("mcmc: fixed sigma2 must be positive");
}

DesignCache::DesignCache(MatrixXd x_in, VectorXd y_in, BetaRoute route)
    : x(std::move(x_in)), y(std::move(y_in)) {
  if (x.rows() != y.size())
    throw std::invalid_argument("design: X rows != y length");
  if (x.rows() < 1 || x.cols() < 1)
    throw std::invalid_argument("design: empty matrix");
  if (!x.allFinite() || !y.allFinite())
    throw std::invalid_argument("design: non-finite entries");
  direct = route == BetaRoute::direct ||
           (route == BetaRoute::automatic && x.cols() <= x.rows());
  xty = x.transpose() * y;
  if (direct) xtx = x.transpose() * x;
}

VectorXd sample_coefficients(const DesignCache& d, const VectorXd& s_diag,
                             double sigma2, RngStream& rng) {
  const int p = d.p();
  const int n = d.n();
  if (s_diag.size() != p)
    throw std::invalid_argument("coefficient draw: scale length mismatch");
  if (!(sigma2 > 0.0) || !s_diag.allFinite() || (s_diag.array() <= 0.0).any())
    throw NumericalError("coefficient draw: invalid scales");
  const double sig = std::sqrt(sigma2);

  if (d.direct) {
    MatrixXd a = d.xtx;
    a.diagonal() += s_diag.cwiseInverse();
    Eigen::LLT<MatrixXd> llt(a);
    double jitter = 1e-12 * (a.trace() / p);
    int tries = 0;
    while (llt.info() != Eigen::Success && tries < 4) {
      a.diagonal().array() += jitter;
      jitter *= 1e3;
      ++tries;
      llt.compute(a);
    }
    if (llt.info() != Eigen::Success)
      throw NumericalError("coefficient draw: factorization failed");
    VectorXd mu = llt.solve(d.xty);
    VectorXd z(p);
    for (int j = 0; j < p; ++j) z[j] = rng.normal();
    VectorXd w = llt.matrixU().solve(z);
    return mu + sig * w;
  }

  // n x n route: u ~ N(0,S), f ~ N(0,I), solve (X S X' + I) w = y/sig - Xu - f
  VectorXd u(p);
  for (int j = 0; j < p; ++j) u[j] = std::sqrt(s_diag[j]) * rng.normal();
  VectorXd f(n);
  for (int i = 0; i < n; ++i) f[i] = rng.normal();
  VectorXd v = d.x * u + f;
  MatrixXd m = d.x * s_diag.asDiagonal() * d.x.transpose();
  m.diagonal().array() += 1.0;
  Eigen::LLT<MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) {
    m.diagonal().array() += 1e-10 * (m.trace() / n);
    llt.compute(m);
    if (llt.info() != Eigen::Success)
      throw NumericalError("coefficient draw: n-route factorization failed");
  }
  VectorXd w = llt.solve(d.y / sig - v);
  return sig * (u + s_diag.cwiseProduct(d.x.transpose() * w));
}

// shrink scales: prior covariance of beta is sigma2 * S

VectorXd r2d2_shrink_scale(const R2d2State& st) {
  return floored(
      (st.psi.array() * st.phi.array() * (0.5 * st.omega)).matrix());
}

VectorXd dl_shrink_scale(const DlState& st) {
  double g = st.tau * st.tau / st.sigma2;
  return floored((st.psi.array() * st.phi.array().square() * g).matrix());
}

VectorXd hs_shrink_scale(const HsState& st) {
  return floored((st.lambda2.array() / st.sigma2).matrix());
}

VectorXd hsplus_shrink_scale(const HsPlusState& st) {
  return floored((st.lambda2.array() / st.sigma2).matrix());
}

// initial states: latents at their prior means, coefficients at zero

R2d2State r2d2_init(const R2d2Params& prior, int p) {
  validate(prior);
  R2d2State st;
  st.beta = VectorXd::Zero(p);
  st.sigma2 = 1.0;
  st.psi = VectorXd::Constant(p, 2.0);
  st.phi = VectorXd::Constant(p, 1.0 / p);
  st.xi = std::max(prior.b, 0.1);
  st.omega = std::max(prior.a / st.xi, 1e-6);
  return st;
}

DlState dl_init(const DlParams& prior, int p) {
  validate(prior);
  DlState st;
  st.beta = VectorXd::Zero(p);
  st.sigma2 = 1.0;
  st.psi = VectorXd::Constant(p, 2.0);
  st.phi = VectorXd::Constant(p, 1.0 / p);
  st.tau = 2.0 * p * prior.a_d;
  return st;
}

HsState hs_init(const HsParams& prior, int p) {
  validate(prior);
  HsState st;
  st.beta = VectorXd::Zero(p);
  st.sigma2 = 1.0;
  st.tau2 = prior.tau * prior.tau;
  st.lambda2 = VectorXd::Constant(p, st.tau2);
  st.nu = VectorXd::Constant(p, 1.0);
  st.zeta = 1.0;
  return st;
}

HsPlusState hsplus_init(const HsPlusParams& prior, int p) {
  validate(prior);
  HsPlusState st;
  st.beta = VectorXd::Zero(p);
  st.sigma2 = 1.0;
  st.tau2 = prior.tau * prior.tau;
  st.lambda2 = VectorXd::Constant(p, st.tau2);
  st.nu = VectorXd::Constant(p, 1.0);
  st.eta2 = VectorXd::Constant(p, 1.0);
  st.rho = VectorXd::Constant(p, 1.0);
  st.zeta = 1.0;
  return st;
}

// R2-D2 conditional updates

void r2d2_step_beta(R2d2State& st, const DesignCache& d, RngStream& rng) {
  st.beta = sample_coefficients(d, r2d2_shrink_scale(st), st.sigma2, rng);
  if (!st.beta.allFinite()) throw NumericalError("beta draw non-finite");
}

void r2d2_step_sigma2(R2d2State& st, const DesignCache& d,
                      const SigmaPrior& sp, RngStream& rng) {
  VectorXd s = r2d2_shrink_scale(st);
  double quad = (st.beta.array().square() / s.array()).sum();
  double rss = residual_ss(d, st.beta);
  if (!std::isfinite(quad) || !std::isfinite(rss))
    throw NumericalError("sigma2 quadratic form non-finite");
  st.sigma2 = clamp_scale(
      sample_inverse_gamma(rng, sp.a1 + 0.5 * (d.n() + d.p()),
                           sp.b1 + 0.5 * (quad + rss)),
      "sigma2");
}

void r2d2_step_psi(R2d2State& st, RngStream& rng) {
  const int p = int(st.beta.size());
  for (int j = 0; j < p; ++j) {
    double bj = std::max(std::fabs(st.beta[j]), kBetaFloor);
    double mu =
        clamp_mu(std::sqrt(0.5 * st.sigma2 * st.phi[j] * st.omega) / bj);
    double inv = sample_inverse_gaussian(rng, mu, 1.0);
    st.psi[j] = clamp_scale(1.0 / inv, "psi");
  }
}

void r2d2_step_omega(R2d2State& st, const R2d2Params& prior, RngStream& rng) {
  const int p = int(st.beta.size());
  double chi = 0.0;
  for (int j = 0; j < p; ++j) {
    double bj = std::max(std::fabs(st.beta[j]), kBetaFloor);
    double phi = std::max(st.phi[j], 1e-300);
    chi += 2.0 * bj * bj / (st.sigma2 * st.psi[j] * phi);
  }
  if (!std::isfinite(chi)) throw NumericalError("omega chi non-finite");
  chi = std::min(chi, 1e300);
  GigParams g{chi, 2.0 * st.xi, prior.a - 0.5 * p};
  st.omega = clamp_scale(std::exp(std::clamp(
                             sample_log_gig(rng, g), -345.0, 345.0)),
                         "omega");
}

void r2d2_step_xi(R2d2State& st, const R2d2Params& prior, RngStream& rng) {
  st.xi = clamp_scale(
      sample_gamma(rng, prior.a + prior.b, 1.0 + st.omega), "xi");
}

void r2d2_step_phi(R2d2State& st, const R2d2Params& prior, RngStream& rng) {
  const int p = int(st.beta.size());
  VectorXd lt(p);
  for (int j = 0; j < p; ++j) {
    double bj = std::max(std::fabs(st.beta[j]), kBetaFloor);
    GigParams g{2.0 * bj * bj / (st.sigma2 * st.psi[j]), 2.0 * st.xi,
                prior.a_pi - 0.5};
    lt[j] = sample_log_gig(rng, g);
  }
  double m = lt.maxCoeff();
  if (!std::isfinite(m)) throw NumericalError("phi draw non-finite");
  VectorXd t = (lt.array() - m).exp();
  double sum = t.sum();
  if (!(sum > 0.0) || !std::isfinite(sum))
    throw NumericalError("phi renormalization failed");
  st.phi = t / sum;
}

void r2d2_sweep(R2d2State& st, const R2d2Params& prior, const SigmaPrior& sp,
                const DesignCache& d, const McmcConfig& mc, RngStream& rng) {
  r2d2_step_beta(st, d, rng);
  if (!mc.fixed_sigma2) r2d2_step_sigma2(st, d, sp, rng);
  r2d2_step_psi(st, rng);
  r2d2_step_omega(st, prior, rng);
  r2d2_step_xi(st, prior, rng);
  r2d2_step_phi(st, prior, rng);
}

void dl_sweep(DlState& st, const DlParams& prior, const SigmaPrior& sp,
              const DesignCache& d, const McmcConfig& mc, RngStream& rng) {
  const int p = d.p();
  st.beta = sample_coefficients(d, dl_shrink_scale(st), st.sigma2, rng);
  if (!st.beta.allFinite()) throw NumericalError("beta draw non-finite");
  if (!mc.fixed_sigma2) st.sigma2 = step_sigma2_marginal(d, st.beta, sp, rng);
  // The scale block (phi, tau, psi) given beta factorizes as
  //   p(phi | beta) p(tau | phi, beta) p(psi | phi, tau, beta),
  // so an exact joint draw must proceed in that order: phi from the
  // tau/psi-marginalized split, then tau given the fresh phi, then psi
  // given both. Any other order leaves a stale combination in the state
  // and the chain's stationary law drifts off the posterior (detected by
  // the joint-distribution test).
  VectorXd lt(p);
  for (int j = 0; j < p; ++j) {
    double bj = std::max(std::fabs(st.beta[j]), kBetaFloor);
    GigParams g{2.0 * bj, 1.0, prior.a_d - 1.0};
    lt[j] = sample_log_gig(rng, g);
  }
  double m = lt.maxCoeff();
  if (!std::isfinite(m)) throw NumericalError("phi draw non-finite");
  VectorXd t = (lt.array() - m).exp();
  double sum = t.sum();
  if (!(sum > 0.0) || !std::isfinite(sum))
    throw NumericalError("phi renormalization failed");
  st.phi = t / sum;
  double chi_tau = 0.0;
  for (int j = 0; j < p; ++j) {
    double bj = std::max(std::fabs(st.beta[j]), kBetaFloor);
    chi_tau += 2.0 * bj / std::max(st.phi[j], 1e-300);
  }
  chi_tau = std::min(chi_tau, 1e300);
  GigParams gt{chi_tau, 1.0, p * (prior.a_d - 1.0)};
  st.tau = clamp_scale(
      std::exp(std::clamp(sample_log_gig(rng, gt), -345.0, 345.0)), "tau");
  for (int j = 0; j < p; ++j) {
    double bj = std::max(std::fabs(st.beta[j]), kBetaFloor);
    double mu = clamp_mu(std::max(st.phi[j], 1e-300) * st.tau / bj);
    double inv = sample_inverse_gaussian(rng, mu, 1.0);
    st.psi[j] = clamp_scale(1.0 / inv, "psi");
  }
}

void hs_sweep(HsState& st, const HsParams& prior, const SigmaPrior& sp,
              const DesignCache& d, const McmcConfig& mc, RngStream& rng) {
  const int p = d.p();
  st.beta = sample_coefficients(d, hs_shrink_scale(st), st.sigma2, rng);
  if (!st.beta.allFinite()) throw NumericalError("beta draw non-finite");
  if (!mc.fixed_sigma2) st.sigma2 = step_sigma2_marginal(d, st.beta, sp, rng);
  for (int j = 0; j < p; ++j) {
    double b2 = st.beta[j] * st.beta[j];
    st.lambda2[j] = clamp_scale(
        sample_inverse_gamma(rng, 1.0, 1.0 / st.nu[j] + 0.5 * b2), "lambda2");
    st.nu[j] = clamp_scale(
        sample_inverse_gamma(rng, 1.0, 1.0 / st.lambda2[j] + 1.0 / st.tau2),
        "nu");
  }
  if (prior.sample_global) {
    double s = 0.0;
    for (int j = 0; j < p; ++j) s += 1.0 / st.nu[j];
    st.tau2 = clamp_scale(
        sample_inverse_gamma(rng, 0.5 * (p + 1), 1.0 / st.zeta + s), "tau2");
    st.zeta = clamp_scale(
        sample_inverse_gamma(rng, 1.0, 1.0 + 1.0 / st.tau2), "zeta");
  }
}

void hsplus_sweep(HsPlusState& st, const HsPlusParams& prior,
                  const SigmaPrior& sp, const DesignCache& d,
                  const McmcConfig& mc, RngStream& rng) {
  const int p = d.p();
  st.beta = sample_coefficients(d, hsplus_shrink_scale(st), st.sigma2, rng);
  if (!st.beta.allFinite()) throw NumericalError("beta draw non-finite");
  if (!mc.fixed_sigma2) st.sigma2 = step_sigma2_marginal(d, st.beta, sp, rng);
  for (int j = 0; j < p; ++j) {
    double b2 = st.beta[j] * st.beta[j];
    st.lambda2[j] = clamp_scale(
        sample_inverse_gamma(rng, 1.0, 1.0 / st.nu[j] + 0.5 * b2), "lambda2");
    st.nu[j] = clamp_scale(
        sample_inverse_gamma(rng, 1.0,
                             1.0 / st.lambda2[j] +
                                 1.0 / (st.tau2 * st.eta2[j])),
        "nu");
    st.eta2[j] = clamp_scale(
        sample_inverse_gamma(rng, 1.0,
                             1.0 / st.rho[j] + 1.0 / (st.tau2 * st.nu[j])),
        "eta2");
    st.rho[j] = clamp_scale(
        sample_inverse_gamma(rng, 1.0, 1.0 + 1.0 / st.eta2[j]), "rho");
  }
  if (prior.sample_global) {
    double s = 0.0;
    for (int j = 0; j < p; ++j) s += 1.0 / (st.nu[j] * st.eta2[j]);
    st.tau2 = clamp_scale(
        sample_inverse_gamma(rng, 0.5 * (p + 1), 1.0 / st.zeta + s), "tau2");
    st.zeta = clamp_scale(
        sample_inverse_gamma(rng, 1.0, 1.0 + 1.0 / st.tau2), "zeta");
  }
}

PosteriorDraws run_chain(const PriorSpec& prior, const SigmaPrior& sp,
                         const MatrixXd& x, const VectorXd& y,
                         const McmcConfig& mc, std::uint64_t seed,
                         std::uint64_t stream) {
  validate(mc);
  std::visit([](const auto& pr) { validate(pr); }, prior);
  DesignCache d(x, y, mc.route);
  RngStream rng(seed, stream);
  const int p = d.p();
  const int kept_n = (mc.iterations - mc.burnin) / mc.thin;
  if (kept_n < 1) throw std::invalid_argument("mcmc: no retained draws");

  PosteriorDraws out;
  out.beta.resize(kept_n, p);
  out.sigma2.resize(kept_n);
  out.global.resize(kept_n);
  out.total_iterations = mc.iterations;
  out.burnin = mc.burnin;
  out.thin = mc.thin;
  out.seed = seed;
  out.stream = stream;
  out.prior = prior_label(prior);

  auto drive = [&](auto& st, auto&& sweep_fn, auto&& global_of) {
    if (mc.fixed_sigma2) st.sigma2 = *mc.fixed_sigma2;
    int k = 0;
    for (int it = 0; it < mc.iterations; ++it) {
      try {
        sweep_fn(st);
      } catch (const NumericalError& e) {
        throw NumericalError("iteration " + std::to_string(it) + ": " +
                             e.what());
      }
      if (it >= mc.burnin && (it - mc.burnin) % mc.thin == 0) {
        if (!st.beta.allFinite() || !(st.sigma2 > 0.0))
          throw NumericalError("iteration " + std::to_string(it) +
                               ": non-finite retained state");
        out.beta.row(k) = st.beta;
        out.sigma2[k] = st.sigma2;
        out.global[k] = global_of(st);
        ++k;
      }
    }
  };

  std::visit(
      [&](const auto& pr) {
        using T = std::decay_t<decltype(pr)>;
        if constexpr (std::is_same_v<T, R2d2Params>) {
          R2d2State st = r2d2_init(pr, p);
          drive(
              st,
              [&](R2d2State& s) { r2d2_sweep(s, pr, sp, d, mc, rng); },
              [](const R2d2State& s) { return s.omega; });
        } else if constexpr (std::is_same_v<T, DlParams>) {
          DlState st = dl_init(pr, p);
          drive(
              st, [&](DlState& s) { dl_sweep(s, pr, sp, d, mc, rng); },
              [](const DlState& s) { return s.tau; });
        } else if constexpr (std::is_same_v<T, HsParams>) {
          HsState st = hs_init(pr, p);
          drive(
              st, [&](HsState& s) { hs_sweep(s, pr, sp, d, mc, rng); },
              [](const HsState& s) { return s.tau2; });
        } else {
          HsPlusState st = hsplus_init(pr, p);
          drive(
              st,
              [&](HsPlusState& s) { hsplus_sweep(s, pr, sp, d, mc, rng); },
              [](const HsPlusState& s) { return s.tau2; });
        }
      },
      prior);
  return out;
}

namespace {

double quantile_sorted(const std::vector<double>& sorted, double q) {
  const std::size_t m = sorted.size();
  double h = (double(m) - 1.0) * q;
  std::size_t lo = std::size_t(h);
  if (lo + 1 >= m) return sorted.back();
  return sorted[lo] + (h - double(lo)) * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

FitSummary summarize(const PosteriorDraws& draws) {
  const int m = draws.retained();
  const int p = int(draws.beta.cols());
  if (m < 2) throw std::invalid_argument("summarize: need >= 2 draws");
  FitSummary s;
  s.mean.resize(p);
  s.sd.resize(p);
  s.t_stat.resize(p);
  s.q025.resize(p);
  s.q500.resize(p);
  s.q975.resize(p);
  std::vector<double> col(static_cast<std::size_t>(m), 0.0);
  for (int j = 0; j < p; ++j) {
    double mean = draws.beta.col(j).mean();
    double ss = (draws.beta.col(j).array() - mean).square().sum();
    double sd = std::sqrt(ss / double(m - 1));
    s.mean[j] = mean;
    s.sd[j] = sd;
    if (sd > 0.0)
      s.t_stat[j] = mean / sd;
    else
      s.t_stat[j] = mean == 0.0 ? 0.0 : std::copysign(1e15, mean);
    for (int i = 0; i < m; ++i) col[std::size_t(i)] = draws.beta(i, j);
    std::sort(col.begin(), col.end());
    s.q025[j] = quantile_sorted(col, 0.025);
    s.q500[j] = quantile_sorted(col, 0.5);
    s.q975[j] = quantile_sorted(col, 0.975);
  }
  s.sigma2_mean = draws.sigma2.mean();
  s.global_mean = draws.global.mean();
  return s;
}

}  // namespace shrinkage
