#include "shrinkage/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace shrinkage {

namespace {

struct SimpsonCtx {
  const Integrand* f;
  long evals = 0;
  long max_evals = 4000000;
  bool converged = true;
  double err_sum = 0.0;

  double eval(double x) {
    ++evals;
    return (*f)(x);
  }
};

// One panel: fa/fm/fb already known, s = Simpson estimate for [a,b].
double simpson_rec(SimpsonCtx& ctx, double a, double b, double fa, double fm,
                   double fb, double s, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = ctx.eval(lm), frm = ctx.eval(rm);
  double h6 = (b - a) / 12.0;
  double sl = h6 * (fa + 4.0 * flm + fm);
  double sr = h6 * (fm + 4.0 * frm + fb);
  double s2 = sl + sr;
  double err = (s2 - s) / 15.0;
  if (depth <= 0 || ctx.evals > ctx.max_evals) {
    if (std::fabs(err) > tol) ctx.converged = false;
    ctx.err_sum += std::fabs(err);
    return s2 + err;
  }
  if (std::fabs(err) <= tol || !std::isfinite(err)) {
    ctx.err_sum += std::fabs(err);
    return s2 + err;
  }
  return simpson_rec(ctx, a, m, fa, flm, fm, sl, 0.5 * tol, depth - 1) +
         simpson_rec(ctx, m, b, fm, frm, fb, sr, 0.5 * tol, depth - 1);
}

QuadResult simpson(const Integrand& f, double a, double b, double rel_tol,
                   double abs_tol) {
  SimpsonCtx ctx;
  ctx.f = &f;
  double m = 0.5 * (a + b);
  double fa = ctx.eval(a), fm = ctx.eval(m), fb = ctx.eval(b);
  double s = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  double tol = std::max(abs_tol, std::fabs(s) * rel_tol);
  if (tol == 0.0) tol = 1e-300;
  QuadResult r;
  r.value = simpson_rec(ctx, a, b, fa, fm, fb, s, tol, 48);
  r.abs_err = ctx.err_sum;
  r.evals = ctx.evals;
  r.converged = ctx.converged;
  return r;
}

}  // namespace

QuadResult integrate(const Integrand& f, double a, double b, double rel_tol,
                     double abs_tol) {
  if (!(a <= b)) throw std::invalid_argument("integrate: need a <= b");
  if (a == b) return {};
  return simpson(f, a, b, rel_tol, abs_tol);
}

QuadResult integrate_segmented(const Integrand& f, std::vector<double> knots,
                               double rel_tol) {
  if (knots.size() < 2) throw std::invalid_argument("integrate_segmented: need >= 2 knots");
  std::sort(knots.begin(), knots.end());
  // First pass gets a magnitude estimate, second pass re-integrates the
  // dominant segments so small segments cannot hide under a loose budget.
  QuadResult total;
  std::vector<double> seg(knots.size() - 1);
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    QuadResult r = simpson(f, knots[i], knots[i + 1], rel_tol, 0.0);
    seg[i] = r.value;
    total.evals += r.evals;
    total.converged = total.converged && r.converged;
    total.value += r.value;
    total.abs_err += r.abs_err;
  }
  double scale = std::fabs(total.value);
  if (scale > 0.0) {
    QuadResult refined;
    refined.evals = total.evals;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
      QuadResult r =
          simpson(f, knots[i], knots[i + 1], rel_tol, scale * rel_tol * 0.1);
      refined.value += r.value;
      refined.abs_err += r.abs_err;
      refined.evals += r.evals;
      refined.converged = refined.converged && r.converged;
    }
    return refined;
  }
  return total;
}

QuadResult integrate_decades(const Integrand& f, double a, double b,
                             double rel_tol) {
  if (!(a > 0.0) || !(b > a)) throw std::invalid_argument("integrate_decades: need 0 < a < b");
  std::vector<double> knots;
  knots.push_back(a);
  for (double x = std::pow(10.0, std::ceil(std::log10(a) + 1e-12)); x < b;
       x *= 10.0) {
    if (x > a) knots.push_back(x);
  }
  knots.push_back(b);
  return integrate_segmented(f, std::move(knots), rel_tol);
}

QuadResult integrate_upper_tail(const Integrand& f, double a, double rel_tol) {
  QuadResult total;
  double lo = a;
  double width = std::max(1.0, std::fabs(a));
  int negligible_run = 0;
  for (int k = 0; k < 400; ++k) {
    double hi = lo + width;
    QuadResult r = simpson(f, lo, hi, rel_tol, 0.0);
    total.value += r.value;
    total.abs_err += r.abs_err;
    total.evals += r.evals;
    total.converged = total.converged && r.converged;
    double floor_contrib =
        std::max(1e-300, std::fabs(total.value) * rel_tol * 0.1);
    negligible_run = (std::fabs(r.value) <= floor_contrib) ? negligible_run + 1 : 0;
    if (negligible_run >= 2) return total;
    lo = hi;
    width *= 2.0;
  }
  total.converged = false;
  return total;
}

}  // namespace shrinkage
