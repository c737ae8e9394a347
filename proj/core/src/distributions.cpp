#include "shrinkage/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace shrinkage {

namespace {

// Marsaglia-Tsang squeeze, shape >= 1, rate 1.
double gamma_mt(RngStream& rng, double shape) {
  double d = shape - 1.0 / 3.0;
  double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = rng.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    double u = rng.u01();
    double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

}  // namespace

double sample_log_gamma(RngStream& rng, double shape, double rate) {
  if (!(shape > 0.0) || !(rate > 0.0))
    throw std::invalid_argument("sample_gamma: shape and rate must be > 0");
  if (shape >= 1.0) return std::log(gamma_mt(rng, shape)) - std::log(rate);
  // Boost from shape+1: G_a = G_{a+1} U^{1/a}, kept in log space so shapes
  // like 1/(2p) cannot underflow.
  double g = gamma_mt(rng, shape + 1.0);
  return std::log(g) + std::log(rng.u01()) / shape - std::log(rate);
}

double sample_gamma(RngStream& rng, double shape, double rate) {
  if (!(shape > 0.0) || !(rate > 0.0))
    throw std::invalid_argument("sample_gamma: shape and rate must be > 0");
  if (shape >= 1.0) return gamma_mt(rng, shape) / rate;
  return std::exp(sample_log_gamma(rng, shape, rate));
}

double sample_beta(RngStream& rng, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::invalid_argument("sample_beta: shapes must be > 0");
  // Log-space gamma ratio; stable for tiny shapes.
  double lg1 = sample_log_gamma(rng, a, 1.0);
  double lg2 = sample_log_gamma(rng, b, 1.0);
  // x = g1/(g1+g2) = 1/(1 + exp(lg2 - lg1))
  double d = lg2 - lg1;
  if (d > 0.0) {
    double e = std::exp(-d);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(d));
}

double sample_beta_prime(RngStream& rng, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::invalid_argument("sample_beta_prime: shapes must be > 0");
  // W = R2/(1-R2) with R2 ~ Beta(a,b) reduces to a gamma ratio.
  double lg1 = sample_log_gamma(rng, a, 1.0);
  double lg2 = sample_log_gamma(rng, b, 1.0);
  return std::exp(lg1 - lg2);
}

void sample_dirichlet(RngStream& rng, std::span<const double> concentration,
                      std::span<double> out) {
  if (concentration.size() != out.size() || out.empty())
    throw std::invalid_argument("sample_dirichlet: size mismatch");
  double max_lg = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < out.size(); ++j) {
    out[j] = sample_log_gamma(rng, concentration[j], 1.0);
    max_lg = std::max(max_lg, out[j]);
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < out.size(); ++j) {
    out[j] = std::exp(out[j] - max_lg);
    sum += out[j];
  }
  for (std::size_t j = 0; j < out.size(); ++j) out[j] /= sum;
}

void sample_dirichlet(RngStream& rng, double concentration,
                      std::span<double> out) {
  std::vector<double> conc(out.size(), concentration);
  sample_dirichlet(rng, conc, out);
}

double sample_inverse_gaussian(RngStream& rng, double mu, double lam) {
  if (!(mu > 0.0) || !(lam > 0.0))
    throw std::invalid_argument("sample_inverse_gaussian: mu and lam must be > 0");
  double z = rng.normal();
  double w = mu * z * z;
  // Larger root of the quadratic is cancellation-free; the smaller one is
  // recovered from x_minus x_plus = mu^2.
  double x_plus = mu * (1.0 + (w + std::sqrt(w * (4.0 * lam + w))) / (2.0 * lam));
  double x_minus = mu * (mu / x_plus);
  double u = rng.u01();
  return (u <= mu / (mu + x_minus)) ? x_minus : x_plus;
}

namespace {

// Two-parameter GIG on the log scale: Y = log Z has density proportional to
// exp(lambda y - omega cosh y). Log-concave for every real lambda, omega > 0;
// sampled with a three-piece hat (flat top, two exponential tails) anchored
// at the mode.
struct GigLogSampler {
  double a;        // sqrt(lambda^2 + omega^2) = omega cosh(y_mode)
  double lambda;
  double t_left, t_right;
  double psi_left, psi_right;
  double dpsi_left, dpsi_right;  // |slope| at the cut points
  double area_center, area_left, area_right;

  // psi(t) = a (cosh t - 1) + lambda (sinh t - t): shifted log-density,
  // psi(0) = 0 at the mode, convex.
  double psi(double t) const {
    return a * (std::cosh(t) - 1.0) + lambda * (std::sinh(t) - t);
  }
  double dpsi(double t) const {
    return a * std::sinh(t) + lambda * (std::cosh(t) - 1.0);
  }

  // Root of psi(t) = 1 on the given side of 0, bracketed then bisected.
  double cut(double sign) const {
    double lo = 0.0, hi = sign;
    while (psi(hi) < 1.0) {
      lo = hi;
      hi *= 2.0;
      if (std::fabs(hi) > 1e6) break;
    }
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      if (psi(mid) < 1.0)
        lo = mid;
      else
        hi = mid;
      if (std::fabs(hi - lo) < 1e-8 * (1.0 + std::fabs(hi))) break;
    }
    return hi;
  }

  explicit GigLogSampler(double lambda_in, double omega) : lambda(lambda_in) {
    a = std::hypot(lambda, omega);
    t_right = cut(+1.0);
    t_left = cut(-1.0);
    psi_right = psi(t_right);
    psi_left = psi(t_left);
    dpsi_right = dpsi(t_right);
    dpsi_left = -dpsi(t_left);
    area_center = t_right - t_left;
    area_right = std::exp(-psi_right) / dpsi_right;
    area_left = std::exp(-psi_left) / dpsi_left;
  }

  // One draw of t = y - y_mode.
  double draw(RngStream& rng) const {
    double total = area_center + area_left + area_right;
    for (;;) {
      double u = rng.u01() * total;
      double t, log_hat;
      if (u < area_center) {
        t = t_left + u;
        log_hat = 0.0;
      } else if (u < area_center + area_right) {
        double e = rng.exponential(1.0);
        t = t_right + e / dpsi_right;
        log_hat = -psi_right - dpsi_right * (t - t_right);
      } else {
        double e = rng.exponential(1.0);
        t = t_left - e / dpsi_left;
        log_hat = -psi_left - dpsi_left * (t_left - t);
      }
      if (std::log(rng.u01()) <= -psi(t) - log_hat) return t;
    }
  }
};

bool gig_params_ok(const GigParams& p) {
  if (p.chi > 0.0 && p.rho > 0.0) return true;
  if (p.chi == 0.0 && p.rho > 0.0 && p.lambda > 0.0) return true;
  if (p.chi > 0.0 && p.rho == 0.0 && p.lambda < 0.0) return true;
  return false;
}

constexpr double kGigChiFloor = 1e-14;

}  // namespace

double sample_log_gig(RngStream& rng, const GigParams& p) {
  if (p.chi < 0.0 || p.rho < 0.0 || !gig_params_ok(p))
    throw std::invalid_argument("sample_gig: parameters outside the proper domain");
  // Boundary reductions.
  if (p.chi < kGigChiFloor && p.lambda > 0.0 && p.rho > 0.0)
    return sample_log_gamma(rng, p.lambda, 0.5 * p.rho);
  if (p.rho == 0.0)  // chi > 0, lambda < 0
    return -sample_log_gamma(rng, -p.lambda, 0.5 * p.chi);
  if (p.lambda == -0.5)
    return std::log(
        sample_inverse_gaussian(rng, std::sqrt(p.chi / p.rho), p.chi));
  if (p.lambda == 0.5)
    return -std::log(
        sample_inverse_gaussian(rng, std::sqrt(p.rho / p.chi), p.rho));
  double omega = std::sqrt(p.chi) * std::sqrt(p.rho);
  double y_mode = std::asinh(p.lambda / omega);
  GigLogSampler sampler(p.lambda, omega);
  double t = sampler.draw(rng);
  return 0.5 * (std::log(p.chi) - std::log(p.rho)) + y_mode + t;
}

double sample_gig(RngStream& rng, const GigParams& p) {
  if (p.chi < 0.0 || p.rho < 0.0 || !gig_params_ok(p))
    throw std::invalid_argument("sample_gig: parameters outside the proper domain");
  if (p.chi < kGigChiFloor && p.lambda > 0.0 && p.rho > 0.0)
    return sample_gamma(rng, p.lambda, 0.5 * p.rho);
  if (p.rho == 0.0) return 1.0 / sample_gamma(rng, -p.lambda, 0.5 * p.chi);
  if (p.lambda == -0.5)
    return sample_inverse_gaussian(rng, std::sqrt(p.chi / p.rho), p.chi);
  if (p.lambda == 0.5)
    return 1.0 / sample_inverse_gaussian(rng, std::sqrt(p.rho / p.chi), p.rho);
  return std::exp(sample_log_gig(rng, p));
}

double sample_student_t(RngStream& rng, double dof) {
  if (!(dof > 0.0)) throw std::invalid_argument("sample_student_t: dof must be > 0");
  double z = rng.normal();
  double g = sample_gamma(rng, 0.5 * dof, 0.5);  // chi-squared dof
  return z / std::sqrt(g / dof);
}

double sample_inverse_gamma(RngStream& rng, double shape, double rate) {
  return 1.0 / sample_gamma(rng, shape, rate);
}

}  // namespace shrinkage
