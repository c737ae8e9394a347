// Acceptance suite: eight end-to-end correctness and reproduction criteria,
// one [PASS]/[FAIL] line each, exit code = number of failures.
//
//   1. every distribution sampler matches an independent quadrature oracle
//      (KS < 0.002 at 1e6 draws), including the two closed-form hierarchy
//      equivalences (gamma-rate mixture = beta-prime global; dirichlet split
//      times gamma total = independent gammas), in under 2 minutes;
//   2. joint-distribution (prior-forward vs conditional-cycle) tests pass for
//      all four prior families at n=10, p=3 (|z| < 4 over 1e5 cycles) and the
//      fully conjugate p=1 subcase matches its analytic marginals
//      (KS < 0.02), in under 10 minutes;
//   3. marginal-density shape: tail and origin power laws, the half-Cauchy
//      origin envelope, and the double-half-Cauchy log-factor ratio checks,
//      in under 1 minute;
//   4. central prior mass over a shrinking 1/sqrt(n) window decays with the
//      predicted power of n for both product-split and additive-split
//      families (slope within 0.03), in under 1 minute;
//   5. desk-scale estimation benchmark (correlated design, 9-prior panel,
//      50 replications): directional orderings, AUC band, and total-error
//      band all hold with zero failed replications;
//   6. the scaled-signal generator's Monte Carlo proportion of explained
//      variance sits at 1/2 within 0.05 under an independent design;
//   7. prediction workflow on screened expression-shaped data: the
//      permuted-response control tracks the test-response variance within
//      15% and informative data predicts strictly better for every prior;
//   8. the criterion-5 and criterion-7 workloads are bitwise identical
//      across reruns and across 1-thread vs 8-thread execution.
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "shrinkage/density.hpp"
#include "shrinkage/diagnostics.hpp"
#include "shrinkage/distributions.hpp"
#include "shrinkage/experiments.hpp"
#include "shrinkage/gibbs.hpp"
#include "shrinkage/priors.hpp"
#include "shrinkage/rng.hpp"
#include "test_support.hpp"

using namespace shrinkage;

namespace {

struct Result {
  bool pass = true;
  std::string detail;
};

void note(Result& r, bool ok, const std::string& on_fail) {
  if (!ok) {
    r.pass = false;
    if (!r.detail.empty()) r.detail += "; ";
    r.detail += on_fail;
  }
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::vector<double> draw_many(int n,
                              const std::function<double(RngStream&)>& gen,
                              std::uint64_t seed) {
  RngStream rng(seed, 0);
  std::vector<double> out(std::size_t(n), 0.0);
  for (double& v : out) v = gen(rng);
  return out;
}

double fit_slope(const std::vector<double>& lx, const std::vector<double>& ly) {
  const int n = int(lx.size());
  double mx = 0, my = 0;
  for (int i = 0; i < n; ++i) {
    mx += lx[std::size_t(i)];
    my += ly[std::size_t(i)];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (int i = 0; i < n; ++i) {
    sxy += (lx[std::size_t(i)] - mx) * (ly[std::size_t(i)] - my);
    sxx += (lx[std::size_t(i)] - mx) * (lx[std::size_t(i)] - mx);
  }
  return sxy / sxx;
}

// ---------------------------------------------------------------- criterion 1

Result criterion1() {
  using namespace testsupport;
  const int N = 1000000;
  auto t0 = std::chrono::steady_clock::now();
  Result r;
  double worst = 0.0;
  std::string worst_name = "none";
  int checks = 0;
  auto take = [&](const char* name, double ks) {
    ++checks;
    if (ks > worst) {
      worst = ks;
      worst_name = name;
    }
    note(r, ks < 0.002, fmt("%s ks=%.5f", name, ks));
  };

  take("normal", ks_statistic(draw_many(N, [](RngStream& g) { return g.normal(); }, 811),
                              [](double x) { return normal_cdf(x); }));
  take("uniform", ks_statistic(draw_many(N, [](RngStream& g) { return g.u01(); }, 812),
                               [](double x) { return x; }));
  take("gamma(0.3,1)",
       ks_statistic(draw_many(N, [](RngStream& g) { return sample_gamma(g, 0.3, 1.0); }, 813),
                    [](double x) { return gamma_cdf(x, 0.3, 1.0); }));
  take("gamma(2.7,2.5)",
       ks_statistic(draw_many(N, [](RngStream& g) { return sample_gamma(g, 2.7, 2.5); }, 814),
                    [](double x) { return gamma_cdf(x, 2.7, 2.5); }));
  take("exp(log-gamma(0.5))",
       ks_statistic(draw_many(N, [](RngStream& g) { return std::exp(sample_log_gamma(g, 0.5, 1.0)); }, 815),
                    [](double x) { return gamma_cdf(x, 0.5, 1.0); }));
  take("beta(0.4,1.7)",
       ks_statistic(draw_many(N, [](RngStream& g) { return sample_beta(g, 0.4, 1.7); }, 816),
                    [](double x) { return inc_beta(0.4, 1.7, x); }));
  take("beta-prime(0.5,0.5)",
       ks_statistic(draw_many(N, [](RngStream& g) { return sample_beta_prime(g, 0.5, 0.5); }, 817),
                    [](double w) { return inc_beta(0.5, 0.5, w / (1.0 + w)); }));
  {
    RngStream rng(818, 0);
    std::vector<double> first(std::size_t(N), 0.0);
    double buf[8];
    for (int i = 0; i < N; ++i) {
      sample_dirichlet(rng, 0.25, std::span<double>(buf, 8));
      first[std::size_t(i)] = buf[0];
    }
    take("dirichlet(0.25,8) marginal",
         ks_statistic(first, [](double x) { return inc_beta(0.25, 1.75, x); }));
  }
  take("inv-gaussian(0.7,1)",
       ks_statistic(draw_many(N, [](RngStream& g) { return sample_inverse_gaussian(g, 0.7, 1.0); }, 819),
                    [](double x) { return inv_gaussian_cdf(x, 0.7, 1.0); }));
  take("inv-gamma(1.8,2.2)",
       ks_statistic(draw_many(N, [](RngStream& g) { return sample_inverse_gamma(g, 1.8, 2.2); }, 820),
                    [](double x) { return 1.0 - gamma_cdf(1.0 / x, 1.8, 2.2); }));
  take("student-t(3)",
       ks_statistic(draw_many(N, [](RngStream& g) { return sample_student_t(g, 3.0); }, 821),
                    [](double x) { return student_t_cdf(x, 3.0); }));

  struct GigCase {
    GigParams p;
    double lo, hi;
    std::uint64_t seed;
    const char* name;
  };
  const GigCase gigs[] = {
      {{1.0, 1.0, 0.5}, -14.0, 6.0, 822, "gig(1,1,0.5)"},
      {{2.0, 0.5, -0.7}, -10.0, 10.0, 823, "gig(2,0.5,-0.7)"},
      {{0.01, 1.0, 2.0}, -12.0, 8.0, 824, "gig(0.01,1,2)"},
      {{5.0, 3.0, -3.0}, -6.0, 5.0, 825, "gig(5,3,-3)"},
  };
  for (const auto& c : gigs) {
    auto cdf = tabulate_log_grid_cdf(
        [p = c.p](double z) {
          return (p.lambda - 1.0) * std::log(z) - 0.5 * (p.rho * z + p.chi / z);
        },
        c.lo, c.hi, 12000);
    take(c.name,
         ks_statistic(draw_many(N, [&](RngStream& g) { return sample_gig(g, c.p); }, c.seed),
                      [&](double x) { return cdf(x); }));
  }
  {
    GigParams p{2.0, 0.5, -0.7};
    auto cdf = tabulate_log_grid_cdf(
        [p](double z) {
          return (p.lambda - 1.0) * std::log(z) - 0.5 * (p.rho * z + p.chi / z);
        },
        -10.0, 10.0, 12000);
    take("exp(log-gig)",
         ks_statistic(draw_many(N, [&](RngStream& g) { return std::exp(sample_log_gig(g, p)); }, 826),
                      [&](double x) { return cdf(x); }));
  }
  // Global-scale hierarchy: gamma with a gamma-drawn rate is beta-prime.
  for (auto [a, b, seed] :
       {std::tuple{0.5, 0.5, std::uint64_t(827)}, std::tuple{1.4, 0.3, std::uint64_t(828)}}) {
    auto draws = draw_many(
        N,
        [a = a, b = b](RngStream& g) {
          double xi = sample_gamma(g, b, 1.0);
          return sample_gamma(g, a, xi);
        },
        seed);
    take(fmt("rate-mixed gamma = beta-prime(%.1f,%.1f)", a, b).c_str(),
         ks_statistic(draws, [a = a, b = b](double w) {
           return inc_beta(a, b, w / (1.0 + w));
         }));
  }
  // Split-times-total: dirichlet component times an independent gamma total
  // is again gamma with the component concentration.
  {
    RngStream rng(829, 0);
    const double conc = 0.25, xi = 1.7;
    const int p = 8;
    std::vector<double> c0(std::size_t(N), 0.0), c5(std::size_t(N), 0.0);
    double buf[8];
    for (int i = 0; i < N; ++i) {
      sample_dirichlet(rng, conc, std::span<double>(buf, 8));
      double w = sample_gamma(rng, p * conc, xi);
      c0[std::size_t(i)] = buf[0] * w;
      c5[std::size_t(i)] = buf[5] * w;
    }
    take("split*total comp0",
         ks_statistic(c0, [&](double x) { return gamma_cdf(x, conc, xi); }));
    take("split*total comp5",
         ks_statistic(c5, [&](double x) { return gamma_cdf(x, conc, xi); }));
  }

  double secs = seconds_since(t0);
  note(r, secs < 120.0, fmt("runtime %.1f s over 120 s budget", secs));
  if (r.pass)
    r.detail = fmt("worst KS %.5f (%s) over %d checks, limit 0.002", worst,
                   worst_name.c_str(), checks);
  return r;
}

// ---------------------------------------------------------------- criterion 2

constexpr int kGwN = 10, kGwP = 3;
constexpr int kGwReps = 16, kGwCyclesPerRep = 6250;  // 1e5 cycles total
constexpr int kGwMcDraws = 100000;
const SigmaPrior kGwSigma{4.0, 3.0};  // raw moments of sigma2 exist

MatrixXd geweke_design() {
  RngStream rng(9001, 0);
  MatrixXd x(kGwN, kGwP);
  for (int i = 0; i < kGwN; ++i)
    for (int j = 0; j < kGwP; ++j) x(i, j) = rng.normal();
  return x;
}

VectorXd geweke_response(const MatrixXd& x, const VectorXd& beta, double sigma2,
                         RngStream& rng) {
  VectorXd y(x.rows());
  double s = std::sqrt(sigma2);
  for (int i = 0; i < x.rows(); ++i)
    y[i] = x.row(i).dot(beta) + s * rng.normal();
  return y;
}

// The conditional-cycle side runs as independent replicate chains; the
// spread of the replicate means provides the standard error. A single-chain
// autocorrelation-time estimate is unusable here: the global scale's
// heavy-tailed excursions dominate the series and make it overconfident.
template <class State, class PriorDraw, class Sweep, class Stats>
double geweke_worst_z(PriorDraw prior_draw, Sweep sweep, Stats stats,
                      int n_stats, std::uint64_t seed) {
  MatrixXd x = geweke_design();
  McmcConfig mc;  // sigma2 sampled
  mc.route = BetaRoute::direct;

  std::vector<double> mc_mean(std::size_t(n_stats), 0.0);
  std::vector<double> mc_m2(std::size_t(n_stats), 0.0);
  {
    RngStream rng(seed, 0);
    for (int c = 0; c < kGwMcDraws; ++c) {
      auto g = stats(prior_draw(rng));
      for (int k = 0; k < n_stats; ++k) {
        double d = g[std::size_t(k)] - mc_mean[std::size_t(k)];
        mc_mean[std::size_t(k)] += d / double(c + 1);
        mc_m2[std::size_t(k)] += d * (g[std::size_t(k)] - mc_mean[std::size_t(k)]);
      }
    }
    for (int k = 0; k < n_stats; ++k)
      mc_m2[std::size_t(k)] /= double(kGwMcDraws - 1);
  }

  std::vector<std::vector<double>> rep_means(
      std::size_t(n_stats), std::vector<double>(std::size_t(kGwReps), 0.0));
  for (int rep = 0; rep < kGwReps; ++rep) {
    RngStream rng(seed, std::uint64_t(100 + rep));
    State st = prior_draw(rng);
    std::vector<double> acc(std::size_t(n_stats), 0.0);
    for (int c = 0; c < kGwCyclesPerRep; ++c) {
      VectorXd y = geweke_response(x, st.beta, st.sigma2, rng);
      DesignCache d(x, y, BetaRoute::direct);
      sweep(st, d, mc, rng);
      auto g = stats(st);
      for (int k = 0; k < n_stats; ++k) acc[std::size_t(k)] += g[std::size_t(k)];
    }
    for (int k = 0; k < n_stats; ++k)
      rep_means[std::size_t(k)][std::size_t(rep)] =
          acc[std::size_t(k)] / double(kGwCyclesPerRep);
  }

  double worst = 0.0;
  for (int k = 0; k < n_stats; ++k) {
    double m = 0.0;
    for (double v : rep_means[std::size_t(k)]) m += v;
    m /= double(kGwReps);
    double v2 = 0.0;
    for (double v : rep_means[std::size_t(k)]) v2 += (v - m) * (v - m);
    v2 /= double(kGwReps - 1);
    double se = std::sqrt(v2 / double(kGwReps) +
                          mc_m2[std::size_t(k)] / double(kGwMcDraws));
    worst = std::max(worst, std::fabs((m - mc_mean[std::size_t(k)]) / se));
  }
  return worst;
}

Result criterion2() {
  using namespace testsupport;
  auto t0 = std::chrono::steady_clock::now();
  Result r;

  // R2-based product-split family.
  R2d2Params r2 = make_r2d2_full(0.9, 3.0, 0.3);
  double z_r2d2 = geweke_worst_z<R2d2State>(
      [&](RngStream& rng) {
        R2d2State st;
        st.sigma2 = sample_inverse_gamma(rng, kGwSigma.a1, kGwSigma.b1);
        st.psi.resize(kGwP);
        for (int j = 0; j < kGwP; ++j) st.psi[j] = sample_gamma(rng, 1.0, 0.5);
        st.xi = sample_gamma(rng, r2.b, 1.0);
        st.omega = sample_gamma(rng, r2.a, st.xi);
        st.phi.resize(kGwP);
        sample_dirichlet(rng, r2.a_pi,
                         std::span<double>(st.phi.data(), std::size_t(kGwP)));
        st.beta.resize(kGwP);
        for (int j = 0; j < kGwP; ++j)
          st.beta[j] =
              std::sqrt(st.sigma2 * st.psi[j] * st.phi[j] * st.omega * 0.5) *
              rng.normal();
        return st;
      },
      [&](R2d2State& st, const DesignCache& d, const McmcConfig& mc, RngStream& rng) {
        r2d2_sweep(st, r2, kGwSigma, d, mc, rng);
      },
      [](const R2d2State& st) -> std::vector<double> {
        double b2 = st.beta[0] * st.beta[0];
        return {std::log1p(b2), std::log(st.sigma2), std::log1p(st.omega), b2,
                st.sigma2, st.omega};
      },
      6, 9101);
  note(r, z_r2d2 < 4.0, fmt("r2d2 worst |z|=%.2f", z_r2d2));

  // Additive-split family; shape 0.7 keeps every conditional's negative
  // order branch exercised while raw second moments stay finite.
  DlParams dl{0.7};
  double z_dl = geweke_worst_z<DlState>(
      [&](RngStream& rng) {
        DlState st;
        st.sigma2 = sample_inverse_gamma(rng, kGwSigma.a1, kGwSigma.b1);
        st.psi.resize(kGwP);
        for (int j = 0; j < kGwP; ++j) st.psi[j] = sample_gamma(rng, 1.0, 0.5);
        VectorXd t(kGwP);
        for (int j = 0; j < kGwP; ++j) t[j] = sample_gamma(rng, dl.a_d, 0.5);
        st.tau = t.sum();
        st.phi = t / st.tau;
        st.beta.resize(kGwP);
        for (int j = 0; j < kGwP; ++j)
          st.beta[j] = st.phi[j] * st.tau * std::sqrt(st.psi[j]) * rng.normal();
        return st;
      },
      [&](DlState& st, const DesignCache& d, const McmcConfig& mc, RngStream& rng) {
        dl_sweep(st, dl, kGwSigma, d, mc, rng);
      },
      [](const DlState& st) -> std::vector<double> {
        double b2 = st.beta[0] * st.beta[0];
        return {std::log1p(b2), std::log(st.sigma2), std::log1p(st.tau), b2,
                st.sigma2, st.tau};
      },
      6, 9102);
  note(r, z_dl < 4.0, fmt("dl worst |z|=%.2f", z_dl));

  // Half-Cauchy family with sampled global scale; raw moments of the
  // coefficient and global scale do not exist, so stats stay on the log side.
  HsParams hs{1.0, true};
  double z_hs = geweke_worst_z<HsState>(
      [&](RngStream& rng) {
        HsState st;
        st.sigma2 = sample_inverse_gamma(rng, kGwSigma.a1, kGwSigma.b1);
        st.zeta = sample_inverse_gamma(rng, 0.5, 1.0);
        st.tau2 = sample_inverse_gamma(rng, 0.5, 1.0 / st.zeta);
        st.nu.resize(kGwP);
        st.lambda2.resize(kGwP);
        st.beta.resize(kGwP);
        for (int j = 0; j < kGwP; ++j) {
          st.nu[j] = sample_inverse_gamma(rng, 0.5, 1.0 / st.tau2);
          st.lambda2[j] = sample_inverse_gamma(rng, 0.5, 1.0 / st.nu[j]);
          st.beta[j] = std::sqrt(st.lambda2[j]) * rng.normal();
        }
        return st;
      },
      [&](HsState& st, const DesignCache& d, const McmcConfig& mc, RngStream& rng) {
        hs_sweep(st, hs, kGwSigma, d, mc, rng);
      },
      [](const HsState& st) -> std::vector<double> {
        double b2 = st.beta[0] * st.beta[0];
        return {std::log1p(b2), std::log(st.sigma2), std::log1p(st.tau2),
                st.sigma2};
      },
      4, 9103);
  note(r, z_hs < 4.0, fmt("hs worst |z|=%.2f", z_hs));

  HsPlusParams hsp{1.0, true};
  double z_hsp = geweke_worst_z<HsPlusState>(
      [&](RngStream& rng) {
        HsPlusState st;
        st.sigma2 = sample_inverse_gamma(rng, kGwSigma.a1, kGwSigma.b1);
        st.zeta = sample_inverse_gamma(rng, 0.5, 1.0);
        st.tau2 = sample_inverse_gamma(rng, 0.5, 1.0 / st.zeta);
        st.rho.resize(kGwP);
        st.eta2.resize(kGwP);
        st.nu.resize(kGwP);
        st.lambda2.resize(kGwP);
        st.beta.resize(kGwP);
        for (int j = 0; j < kGwP; ++j) {
          st.rho[j] = sample_inverse_gamma(rng, 0.5, 1.0);
          st.eta2[j] = sample_inverse_gamma(rng, 0.5, 1.0 / st.rho[j]);
          st.nu[j] = sample_inverse_gamma(rng, 0.5, 1.0 / (st.tau2 * st.eta2[j]));
          st.lambda2[j] = sample_inverse_gamma(rng, 0.5, 1.0 / st.nu[j]);
          st.beta[j] = std::sqrt(st.lambda2[j]) * rng.normal();
        }
        return st;
      },
      [&](HsPlusState& st, const DesignCache& d, const McmcConfig& mc, RngStream& rng) {
        hsplus_sweep(st, hsp, kGwSigma, d, mc, rng);
      },
      [](const HsPlusState& st) -> std::vector<double> {
        double b2 = st.beta[0] * st.beta[0];
        return {std::log1p(b2), std::log(st.sigma2), std::log1p(st.tau2),
                st.sigma2};
      },
      4, 9104);
  note(r, z_hsp < 4.0, fmt("hs+ worst |z|=%.2f", z_hsp));

  // Fully conjugate p=1 subcase: the two-block chain must reproduce the
  // analytic inverse-gamma and Student-t marginals.
  double ks_sig, ks_beta;
  {
    const int n = 12;
    const double s = 0.7;
    MatrixXd x;
    {
      RngStream rng(700, 0);
      x.resize(n, 1);
      for (int i = 0; i < n; ++i) x(i, 0) = rng.normal();
    }
    VectorXd y(n);
    {
      RngStream rng(700, 1);
      for (int i = 0; i < n; ++i) y[i] = x.row(i).sum() + rng.normal();
    }
    DesignCache d(x, y, BetaRoute::automatic);
    VectorXd s_vec = VectorXd::Constant(1, s);
    const double xtx = x.col(0).squaredNorm();
    const double xty = x.col(0).dot(y);
    const double quad = y.squaredNorm() - s * xty * xty / (1.0 + s * xtx);
    const double a_n = kGwSigma.a1 + 0.5 * n;
    const double b_n = kGwSigma.b1 + 0.5 * quad;
    const double v = 1.0 / (xtx + 1.0 / s);
    const double m = v * xty;
    const double t_scale = std::sqrt(v * b_n / a_n);

    RngStream rng(701, 0);
    double sigma2 = 1.0;
    std::vector<double> sig_draws, beta_draws;
    const int cycles = 60000, burn = 1000, keep_every = 4;
    for (int it = 0; it < cycles; ++it) {
      VectorXd beta = sample_coefficients(d, s_vec, sigma2, rng);
      double rss = (y - x * beta).squaredNorm();
      sigma2 = sample_inverse_gamma(
          rng, kGwSigma.a1 + 0.5 * (n + 1),
          kGwSigma.b1 + 0.5 * (beta[0] * beta[0] / s + rss));
      if (it >= burn && (it - burn) % keep_every == 0) {
        sig_draws.push_back(sigma2);
        beta_draws.push_back(beta[0]);
      }
    }
    ks_sig = ks_statistic(sig_draws, [&](double t) {
      return 1.0 - gamma_cdf(1.0 / t, a_n, b_n);
    });
    ks_beta = ks_statistic(beta_draws, [&](double t) {
      return student_t_cdf((t - m) / t_scale, 2.0 * a_n);
    });
    note(r, ks_sig < 0.02, fmt("conjugate sigma2 ks=%.4f", ks_sig));
    note(r, ks_beta < 0.02, fmt("conjugate coefficient ks=%.4f", ks_beta));
  }

  double secs = seconds_since(t0);
  note(r, secs < 600.0, fmt("runtime %.1f s over 600 s budget", secs));
  if (r.pass)
    r.detail = fmt(
        "worst |z| r2d2 %.2f, dl %.2f, hs %.2f, hs+ %.2f (limit 4); "
        "conjugate KS %.4f/%.4f (limit 0.02)",
        z_r2d2, z_dl, z_hs, z_hsp, ks_sig, ks_beta);
  return r;
}

// ---------------------------------------------------------------- criterion 3

Result criterion3() {
  auto t0 = std::chrono::steady_clock::now();
  Result r;
  double worst_err = 0.0;

  for (double b : {0.1, 0.5, 1.0}) {
    R2d2Params p{1.0, b, 0.5, false};
    double slope = log_log_slope(
        [&](double x) { return r2d2_marginal(x, p); }, 1e3, 1e6, 25);
    double err = std::fabs(slope + 2.0 * b + 1.0);
    worst_err = std::max(worst_err, err);
    note(r, err < 0.05, fmt("r2d2 tail b=%.1f slope=%.3f", b, slope));
  }
  for (double a_pi : {0.1, 0.25, 0.4}) {
    R2d2Params p{1.0, 0.5, a_pi, false};
    double slope = log_log_slope(
        [&](double x) { return r2d2_marginal(x, p); }, 1e-8, 1e-5, 25);
    double err = std::fabs(slope + 1.0 - 2.0 * a_pi);
    worst_err = std::max(worst_err, err);
    note(r, err < 0.05, fmt("r2d2 origin a_pi=%.2f slope=%.3f", a_pi, slope));
  }
  for (double a_d : {0.3, 0.7}) {
    double slope = log_log_slope(
        [&](double x) { return dl_marginal(x, DlParams{a_d}); }, 1e-8, 1e-5, 25);
    double err = std::fabs(slope + 1.0 - a_d);
    worst_err = std::max(worst_err, err);
    note(r, err < 0.05, fmt("dl origin a_d=%.1f slope=%.3f", a_d, slope));
  }
  {
    double slope = log_log_slope(
        [](double x) { return hs_marginal(x, 1.0); }, 1e2, 1e5, 25);
    double err = std::fabs(slope + 2.0);
    worst_err = std::max(worst_err, err);
    note(r, err < 0.05, fmt("hs tail slope=%.3f", slope));
    for (double beta : {1e-3, 1e-5, 1e-8}) {
      auto [lo, hi] = hs_origin_envelope(beta);
      double f = hs_marginal(beta, 1.0);
      note(r, f >= lo && f <= hi,
           fmt("hs origin %g outside [%g, %g]: %g", beta, lo, hi, f));
    }
  }
  {
    auto c_tail = [](double beta) {
      return hsplus_marginal(beta, 1.0) * beta * beta / std::log(beta);
    };
    double r1 = c_tail(1e4) / c_tail(1e3);
    double r2 = c_tail(1e5) / c_tail(1e4);
    note(r, std::fabs(r1 - 1.0) < 0.1 && std::fabs(r2 - 1.0) < 0.1 &&
                std::fabs(r2 - 1.0) < std::fabs(r1 - 1.0) + 0.01,
         fmt("hs+ tail log-factor ratios %.3f, %.3f", r1, r2));
    double slope = log_log_slope(
        [](double x) { return hsplus_marginal(x, 1.0); }, 1e4, 1e6, 20);
    note(r, slope > -2.0 && slope < -1.8, fmt("hs+ tail slope=%.3f", slope));
    auto c_origin = [](double beta) {
      double l = std::log(1.0 / beta);
      return hsplus_marginal(beta, 1.0) / (l * l);
    };
    double q1 = c_origin(1e-6) / c_origin(1e-4);
    double q2 = c_origin(1e-8) / c_origin(1e-6);
    note(r, std::fabs(q1 - 1.0) < 0.2 && std::fabs(q2 - 1.0) < 0.2 &&
                std::fabs(q2 - 1.0) < std::fabs(q1 - 1.0) + 0.01,
         fmt("hs+ origin log^2 ratios %.3f, %.3f", q1, q2));
  }

  double secs = seconds_since(t0);
  note(r, secs < 60.0, fmt("runtime %.1f s over 60 s budget", secs));
  if (r.pass)
    r.detail = fmt("worst slope error %.3f (limit 0.05); envelopes and "
                   "log-factor ratios hold",
                   worst_err);
  return r;
}

// ---------------------------------------------------------------- criterion 4

Result criterion4() {
  auto t0 = std::chrono::steady_clock::now();
  Result r;
  std::vector<double> ln;
  for (int e = 2; e <= 8; ++e) ln.push_back(std::log(std::pow(10.0, e)));
  double worst_err = 0.0;

  for (double a_pi : {0.1, 0.2, 0.25}) {
    PriorSpec pr = R2d2Params{1.0, 0.5, a_pi, false};
    std::vector<double> lm;
    for (double l : ln)
      lm.push_back(std::log(prior_mass_near_zero(pr, std::exp(l))));
    double slope = fit_slope(ln, lm);
    double err = std::fabs(slope + a_pi);
    worst_err = std::max(worst_err, err);
    note(r, err < 0.03, fmt("r2d2 a_pi=%.2f mass slope=%.4f", a_pi, slope));
  }
  for (double a_d : {0.3, 0.4, 0.6}) {
    PriorSpec pr = DlParams{a_d};
    std::vector<double> lm;
    for (double l : ln)
      lm.push_back(std::log(prior_mass_near_zero(pr, std::exp(l))));
    double slope = fit_slope(ln, lm);
    double err = std::fabs(slope + 0.5 * a_d);
    worst_err = std::max(worst_err, err);
    note(r, err < 0.03, fmt("dl a_d=%.1f mass slope=%.4f", a_d, slope));
  }

  double secs = seconds_since(t0);
  note(r, secs < 60.0, fmt("runtime %.1f s over 60 s budget", secs));
  if (r.pass)
    r.detail = fmt("worst decay-slope error %.4f (limit 0.03)", worst_err);
  return r;
}

// ---------------------------------------------------------------- criterion 5

SimulationConfig benchmark_config(int threads) {
  SimulationConfig cfg;
  cfg.setup = SimSetup::setup1;
  cfg.n = 60;
  cfg.p = 50;
  cfg.rho = 0.5;
  cfg.replications = 50;
  cfg.base_seed = 20260101;
  cfg.threads = threads;
  cfg.sigma_prior = SigmaPrior{0.001, 0.001};
  cfg.mcmc.iterations = 2000;
  cfg.mcmc.burnin = 1000;
  cfg.mcmc.thin = 1;
  cfg.mcmc.fixed_sigma2 = 1.0;
  cfg.mcmc.route = BetaRoute::automatic;
  cfg.priors = {
      {"hs", HsParams{1.0, true}},
      {"hs+", HsPlusParams{1.0, true}},
      {"r2d2_half_half", default_r2d2(R2d2Default::half_half, cfg.p, cfg.n)},
      {"r2d2_pn_half", default_r2d2(R2d2Default::p_over_n_b_half, cfg.p, cfg.n)},
      {"r2d2_pn_tenth", default_r2d2(R2d2Default::p_over_n_b_tenth, cfg.p, cfg.n)},
      {"r2d2_unit", default_r2d2(R2d2Default::unit, cfg.p, cfg.n)},
      {"dl_1p", DlParams{1.0 / cfg.p}},
      {"dl_2n", DlParams{2.0 / cfg.n}},
      {"dl_1n", DlParams{1.0 / cfg.n}},
  };
  return cfg;
}

const PriorAggregate* find_prior(const SimulationReport& rep,
                                 const std::string& name) {
  for (const auto& a : rep.priors)
    if (a.prior == name) return &a;
  return nullptr;
}

Result criterion5(SimulationReport& out) {
  auto t0 = std::chrono::steady_clock::now();
  Result r;
  out = run_simulation(benchmark_config(1));

  const auto* hs = find_prior(out, "hs");
  const auto* pnh = find_prior(out, "r2d2_pn_half");
  const auto* dl1p = find_prior(out, "dl_1p");
  if (!hs || !pnh || !dl1p) {
    r.pass = false;
    r.detail = "panel aggregate missing";
    return r;
  }
  note(r, pnh->sse_mean.zero < hs->sse_mean.zero,
       fmt("null-coordinate error not below half-Cauchy: %.2f vs %.2f",
           100 * pnh->sse_mean.zero, 100 * hs->sse_mean.zero));
  double max_r2d2_large = 0.0;
  for (const char* name : {"r2d2_half_half", "r2d2_pn_half", "r2d2_pn_tenth",
                           "r2d2_unit"}) {
    const auto* a = find_prior(out, name);
    if (!a) {
      r.pass = false;
      r.detail = "panel aggregate missing";
      return r;
    }
    max_r2d2_large = std::max(max_r2d2_large, a->sse_mean.large);
  }
  note(r, dl1p->sse_mean.large > max_r2d2_large,
       fmt("additive-split large-signal error %.2f not above %.2f",
           100 * dl1p->sse_mean.large, 100 * max_r2d2_large));
  double auc_lo = 1.0, auc_hi = 0.0;
  int failures = 0;
  for (const auto& a : out.priors) {
    auc_lo = std::min(auc_lo, a.auc_mean);
    auc_hi = std::max(auc_hi, a.auc_mean);
    failures += a.failures;
  }
  note(r, auc_lo >= 0.85 && auc_hi <= 0.95,
       fmt("auc range [%.3f, %.3f] outside [0.85, 0.95]", auc_lo, auc_hi));
  double total100 = 100 * pnh->sse_mean.total;
  note(r, total100 >= 50.0 && total100 <= 110.0,
       fmt("total error x100 %.1f outside [50, 110]", total100));
  note(r, failures == 0, fmt("%d failed replications", failures));

  if (r.pass)
    r.detail = fmt(
        "null-err x100 %.1f < %.1f; large-err x100 %.1f > r2d2 max %.1f; "
        "auc [%.3f, %.3f]; total x100 %.1f [%.0f s]",
        100 * pnh->sse_mean.zero, 100 * hs->sse_mean.zero,
        100 * dl1p->sse_mean.large, 100 * max_r2d2_large, auc_lo, auc_hi,
        total100, seconds_since(t0));
  return r;
}

// ---------------------------------------------------------------- criterion 6

Result criterion6() {
  Result r;
  RngStream rng(31415, 0);
  double r2_a = setup2_monte_carlo_r2(100, 0.0, 300000, rng);
  double r2_b = setup2_monte_carlo_r2(500, 0.0, 300000, rng);
  note(r, std::fabs(r2_a - 0.5) < 0.05, fmt("p=100: %.4f", r2_a));
  note(r, std::fabs(r2_b - 0.5) < 0.05, fmt("p=500: %.4f", r2_b));
  if (r.pass)
    r.detail = fmt("explained-variance share %.4f (p=100), %.4f (p=500), "
                   "target 0.50 +/- 0.05",
                   r2_a, r2_b);
  return r;
}

// ---------------------------------------------------------------- criterion 7

struct PredictionSetting {
  MatrixXd x;
  VectorXd y;
  std::vector<LabeledPrior> panel;
  SigmaPrior sp{0.001, 0.001};
  McmcConfig mc;
  SplitPlan plan;
};

PredictionSetting prediction_setting(int threads) {
  PredictionSetting s;
  const int n = 60, p_full = 5000, k = 999;
  RngStream rng(606, 0);
  s.x.resize(n, p_full);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < p_full; ++j) s.x(i, j) = rng.normal();
  VectorXd beta = VectorXd::Zero(p_full);
  for (int j = 0; j < 8; ++j) beta[137 + 483 * j] = (j % 2 == 0) ? 2.0 : -2.0;
  s.y.resize(n);
  for (int i = 0; i < n; ++i) s.y[i] = s.x.row(i).dot(beta) + rng.normal();

  s.panel = {{"r2d2", default_r2d2(R2d2Default::half_half, k, 55)},
             {"dl", DlParams{1.0 / k}},
             {"hs", HsParams{}},
             {"hs+", HsPlusParams{}}};
  s.mc.iterations = 1000;
  s.mc.burnin = 500;
  s.mc.thin = 1;
  s.mc.route = BetaRoute::automatic;  // noise variance sampled
  s.plan.train_n = 55;
  s.plan.test_n = 5;
  s.plan.splits = 20;
  s.plan.screen_k = k;
  s.plan.base_seed = 777;
  s.plan.threads = threads;
  return s;
}

Result criterion7(PredictionReport& info_out, PredictionReport& ctrl_out) {
  auto t0 = std::chrono::steady_clock::now();
  Result r;
  PredictionSetting s = prediction_setting(1);
  s.plan.permute_response = false;
  info_out = train_test_evaluate(s.x, s.y, s.plan, s.panel, s.sp, s.mc);
  s.plan.permute_response = true;
  ctrl_out = train_test_evaluate(s.x, s.y, s.plan, s.panel, s.sp, s.mc);

  double worst_rel = 0.0, worst_gap = 1e300;
  for (std::size_t i = 0; i < s.panel.size(); ++i) {
    const auto& a = info_out.priors[i];
    const auto& b = ctrl_out.priors[i];
    double rel = std::fabs(b.mspe_mean / ctrl_out.test_variance_mean - 1.0);
    worst_rel = std::max(worst_rel, rel);
    worst_gap = std::min(worst_gap, b.mspe_mean - a.mspe_mean);
    note(r, rel <= 0.15,
         fmt("%s permuted mspe %.2f vs test var %.2f (rel %.3f)",
             a.prior.c_str(), b.mspe_mean, ctrl_out.test_variance_mean, rel));
    note(r, a.mspe_mean < b.mspe_mean,
         fmt("%s informative %.2f not below permuted %.2f", a.prior.c_str(),
             a.mspe_mean, b.mspe_mean));
    note(r, a.failures == 0 && b.failures == 0,
         fmt("%s had failures %d/%d", a.prior.c_str(), a.failures, b.failures));
  }
  if (r.pass)
    r.detail = fmt(
        "permuted control within %.1f%% of test variance %.1f; informative "
        "beats control by >= %.1f for every prior [%.0f s]",
        100 * worst_rel, ctrl_out.test_variance_mean, worst_gap,
        seconds_since(t0));
  return r;
}

// ---------------------------------------------------------------- criterion 8

bool same_sse(const SseDecomposition& a, const SseDecomposition& b) {
  return a.zero == b.zero && a.small == b.small && a.large == b.large &&
         a.total == b.total;
}

bool same_simulation(const SimulationReport& a, const SimulationReport& b) {
  if (a.records.size() != b.records.size() || a.priors.size() != b.priors.size())
    return false;
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    const auto& x = a.records[i];
    const auto& y = b.records[i];
    if (x.replication != y.replication || x.prior != y.prior ||
        !same_sse(x.sse, y.sse) || x.auc != y.auc || x.failed != y.failed ||
        x.error != y.error)
      return false;
  }
  for (std::size_t i = 0; i < a.priors.size(); ++i) {
    const auto& x = a.priors[i];
    const auto& y = b.priors[i];
    if (x.prior != y.prior || !same_sse(x.sse_mean, y.sse_mean) ||
        !same_sse(x.sse_se, y.sse_se) || x.auc_mean != y.auc_mean ||
        x.auc_se != y.auc_se || x.replications_used != y.replications_used ||
        x.failures != y.failures)
      return false;
  }
  return true;
}

bool same_prediction(const PredictionReport& a, const PredictionReport& b) {
  if (a.records.size() != b.records.size() ||
      a.priors.size() != b.priors.size() ||
      a.test_variance_mean != b.test_variance_mean)
    return false;
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    const auto& x = a.records[i];
    const auto& y = b.records[i];
    if (x.split != y.split || x.prior != y.prior || x.mspe != y.mspe ||
        x.failed != y.failed || x.error != y.error)
      return false;
  }
  for (std::size_t i = 0; i < a.priors.size(); ++i) {
    const auto& x = a.priors[i];
    const auto& y = b.priors[i];
    if (x.prior != y.prior || x.mspe_mean != y.mspe_mean ||
        x.mspe_se != y.mspe_se || x.splits_used != y.splits_used ||
        x.failures != y.failures)
      return false;
  }
  return true;
}

Result criterion8(const SimulationReport& sim_base,
                  const PredictionReport& info_base,
                  const PredictionReport& ctrl_base) {
  auto t0 = std::chrono::steady_clock::now();
  Result r;

  SimulationReport sim_rerun = run_simulation(benchmark_config(1));
  note(r, same_simulation(sim_base, sim_rerun),
       "estimation benchmark differs across identical reruns");
  SimulationReport sim_mt = run_simulation(benchmark_config(8));
  note(r, same_simulation(sim_base, sim_mt),
       "estimation benchmark differs between 1 and 8 threads");

  {
    PredictionSetting s = prediction_setting(1);
    s.plan.permute_response = false;
    PredictionReport info = train_test_evaluate(s.x, s.y, s.plan, s.panel, s.sp, s.mc);
    s.plan.permute_response = true;
    PredictionReport ctrl = train_test_evaluate(s.x, s.y, s.plan, s.panel, s.sp, s.mc);
    note(r, same_prediction(info_base, info) && same_prediction(ctrl_base, ctrl),
         "prediction workflow differs across identical reruns");
  }
  {
    PredictionSetting s = prediction_setting(8);
    s.plan.permute_response = false;
    PredictionReport info = train_test_evaluate(s.x, s.y, s.plan, s.panel, s.sp, s.mc);
    s.plan.permute_response = true;
    PredictionReport ctrl = train_test_evaluate(s.x, s.y, s.plan, s.panel, s.sp, s.mc);
    note(r, same_prediction(info_base, info) && same_prediction(ctrl_base, ctrl),
         "prediction workflow differs between 1 and 8 threads");
  }

  if (r.pass)
    r.detail = fmt(
        "estimation benchmark and prediction workflow bitwise identical "
        "across reruns and 1-vs-8 threads [%.0f s]",
        seconds_since(t0));
  return r;
}

void report(int idx, const char* label, const Result& r, int& failures) {
  if (!r.pass) ++failures;
  std::printf("[%s] criterion %d (%s): %s\n", r.pass ? "PASS" : "FAIL", idx,
              label, r.detail.c_str());
  std::fflush(stdout);
}

}  // namespace

int main() {
  auto t0 = std::chrono::steady_clock::now();
  int failures = 0;

  report(1, "sampler oracles", criterion1(), failures);
  report(2, "chain joint-distribution validity", criterion2(), failures);
  report(3, "marginal density shape", criterion3(), failures);
  report(4, "central-mass decay", criterion4(), failures);

  SimulationReport sim_base;
  report(5, "estimation benchmark", criterion5(sim_base), failures);
  report(6, "explained-variance calibration", criterion6(), failures);

  PredictionReport info_base, ctrl_base;
  report(7, "prediction workflow", criterion7(info_base, ctrl_base), failures);
  report(8, "determinism", criterion8(sim_base, info_base, ctrl_base),
         failures);

  std::printf("%d of 8 criteria passed [total %.0f s]\n", 8 - failures,
              seconds_since(t0));
  return failures;
}
