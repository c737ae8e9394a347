#pragma once

#include <Eigen/Dense>
#include <vector>

namespace shrinkage {

using Eigen::VectorXd;

struct ChainDiagnostics {
  double mean = 0.0;
  double sd = 0.0;
  double ess = 0.0;
  double act = 0.0;    // integrated autocorrelation time, n / ess
  bool degenerate = false;  // constant chain, ess meaningless
};

// lag-k autocorrelations (rho_0 = 1), biased 1/n covariance normalization
std::vector<double> autocorrelations(const VectorXd& x, int max_lag);

// effective sample size by Geyer's initial positive sequence: sum adjacent
// autocovariance pairs until a pair goes negative
double ess_initial_positive(const VectorXd& x);

ChainDiagnostics diagnose_chain(const VectorXd& x);

}  // namespace shrinkage
