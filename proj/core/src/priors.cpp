#include "shrinkage/priors.hpp"

#include <cmath>
#include <stdexcept>

#include "shrinkage/special.hpp"

namespace shrinkage {

void validate(const R2d2Params& p) {
  if (!(p.a > 0.0) || !(p.b > 0.0) || !(p.a_pi > 0.0))
    throw std::invalid_argument("r2d2: a, b, a_pi must all be > 0");
}

void validate(const DlParams& p) {
  if (!(p.a_d > 0.0)) throw std::invalid_argument("dl: a_d must be > 0");
}

void validate(const HsParams& p) {
  if (!(p.tau > 0.0)) throw std::invalid_argument("hs: tau must be > 0");
}

void validate(const HsPlusParams& p) {
  if (!(p.tau > 0.0)) throw std::invalid_argument("hs+: tau must be > 0");
}

void validate(const SigmaPrior& p) {
  if (!(p.a1 > 0.0) || !(p.b1 > 0.0))
    throw std::invalid_argument("sigma prior: a1, b1 must be > 0");
}

void validate_prior(const PriorSpec& p) {
  std::visit([](const auto& x) { validate(x); }, p);
}

R2d2Params make_r2d2_full(double a, double b, double a_pi) {
  R2d2Params p{a, b, a_pi, false};
  validate(p);
  return p;
}

R2d2Params make_r2d2_reduced(int p_dim, double b, double a_pi) {
  if (p_dim <= 0) throw std::invalid_argument("r2d2: p must be positive");
  R2d2Params p{p_dim * a_pi, b, a_pi, true};
  validate(p);
  return p;
}

R2d2Params default_r2d2(R2d2Default which, int p, int n) {
  if (p <= 0 || n <= 0) throw std::invalid_argument("default_r2d2: p, n must be positive");
  double pd = p, nd = n;
  switch (which) {
    case R2d2Default::half_half:
      return make_r2d2_reduced(p, 0.5, 0.5 / pd);
    case R2d2Default::p_over_n_b_half:
      return make_r2d2_reduced(p, 0.5, 1.0 / nd);
    case R2d2Default::p_over_n_b_tenth:
      return make_r2d2_reduced(p, 0.1, 1.0 / nd);
    case R2d2Default::unit:
      return make_r2d2_reduced(p, 1.0, 1.0 / pd);
  }
  throw std::invalid_argument("default_r2d2: unknown variant");
}

ImpliedR2 implied_r2_prior(const R2d2Params& prior) {
  validate(prior);
  // Only the a = p * a_pi construction collapses the Dirichlet so that the
  // global variance maps back to R2 ~ Beta(a, b).
  return ImpliedR2{prior.reduced, prior.a, prior.b};
}

double r2d2_abs_moment(const R2d2Params& prior) {
  validate(prior);
  double b = prior.b;
  return b *
         std::exp(log_gamma(0.5 * b) + log_gamma(prior.a_pi + 0.5 * b) -
                  0.5 * b * std::log(2.0) - log_gamma(prior.a_pi));
}

std::string prior_label(const PriorSpec& prior) {
  struct Visitor {
    std::string operator()(const R2d2Params&) const { return "r2d2"; }
    std::string operator()(const DlParams&) const { return "dl"; }
    std::string operator()(const HsParams&) const { return "hs"; }
    std::string operator()(const HsPlusParams&) const { return "hs+"; }
  };
  return std::visit(Visitor{}, prior);
}

}  // namespace shrinkage
