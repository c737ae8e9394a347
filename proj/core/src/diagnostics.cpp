#include "shrinkage/diagnostics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace shrinkage {

namespace {

double autocov(const VectorXd& centered, int k) {
  const auto n = centered.size();
  double s = 0.0;
  for (Eigen::Index t = 0; t + k < n; ++t) s += centered[t] * centered[t + k];
  return s / double(n);
}

}  // namespace

std::vector<double> autocorrelations(const VectorXd& x, int max_lag) {
  const auto n = x.size();
  if (n < 2) throw std::invalid_argument("autocorrelations: need n >= 2");
  VectorXd c = x.array() - x.mean();
  double g0 = autocov(c, 0);
  std::vector<double> rho;
  rho.reserve(std::size_t(max_lag) + 1);
  for (int k = 0; k <= max_lag && k < n; ++k)
    rho.push_back(g0 > 0.0 ? autocov(c, k) / g0 : (k == 0 ? 1.0 : 0.0));
  return rho;
}

double ess_initial_positive(const VectorXd& x) {
  const auto n = x.size();
  if (n < 4) throw std::invalid_argument("ess: need n >= 4");
  VectorXd c = x.array() - x.mean();
  double g0 = autocov(c, 0);
  if (!(g0 > 0.0)) return 0.0;
  double var = -g0;
  for (int m = 0; 2 * m + 1 < n; ++m) {
    double pair = autocov(c, 2 * m) + autocov(c, 2 * m + 1);
    if (pair <= 0.0) break;
    var += 2.0 * pair;
  }
  if (var <= 0.0) var = g0 / double(n);  // strongly antithetic edge
  return double(n) * g0 / var;
}

ChainDiagnostics diagnose_chain(const VectorXd& x) {
  ChainDiagnostics d;
  const auto n = x.size();
  if (n < 4) throw std::invalid_argument("diagnose_chain: need n >= 4");
  d.mean = x.mean();
  double ss = (x.array() - d.mean).square().sum();
  d.sd = std::sqrt(ss / double(n - 1));
  if (!(d.sd > 0.0)) {
    d.degenerate = true;
    d.ess = 0.0;
    d.act = std::numeric_limits<double>::infinity();
    return d;
  }
  d.ess = ess_initial_positive(x);
  d.act = d.ess > 0.0 ? double(n) / d.ess
                      : std::numeric_limits<double>::infinity();
  return d;
}

}  // namespace shrinkage
