#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "shrinkage/dataset.hpp"
#include "shrinkage/gibbs.hpp"
#include "shrinkage/priors.hpp"
#include "shrinkage/rng.hpp"

namespace shrinkage {

enum class SimSetup { setup1 = 1, setup2 = 2 };

struct LabeledPrior {
  std::string name;
  PriorSpec prior;
};

struct SimulationConfig {
  SimSetup setup = SimSetup::setup1;
  int n = 60;
  int p = 50;
  double rho = 0.5;
  int replications = 50;
  std::vector<LabeledPrior> priors;
  SigmaPrior sigma_prior;
  McmcConfig mcmc;
  std::uint64_t base_seed = 0;
  int threads = 0;
};

// Synthetic regression data. Rows of X are stationary AR(1) Gaussian with
// unit marginal variance; noise variance is 1. Draw order is fixed:
// coefficients, then X row by row, then noise.
Dataset gen_setup1(int n, int p, double rho, RngStream& rng);   // 10 signals
Dataset gen_setup2(int n, int p, double rho, RngStream& rng);   // 5 scaled signals

// Monte Carlo estimate of var(x'b) / (var(x'b) + 1) under fresh draws of
// both the covariate row and the second-setup coefficients.
double setup2_monte_carlo_r2(int p, double rho, int draws, RngStream& rng);

struct SseDecomposition {
  double zero = 0.0;   // truth exactly 0
  double small = 0.0;  // |truth| in (0, 0.5]
  double large = 0.0;  // |truth| > 0.5
  double total = 0.0;
};

SseDecomposition sse_decompose(const VectorXd& beta_hat,
                               const VectorXd& beta_true);

// Mann-Whitney AUC of |t| separating nonzero-truth from zero-truth
// coordinates, ties averaged.
double auc_from_tstats(const VectorXd& tstats, const VectorXd& beta_true);

struct ReplicationRecord {
  int replication = 0;
  std::string prior;
  SseDecomposition sse;
  double auc = 0.0;
  bool failed = false;
  std::string error;
};

struct PriorAggregate {
  std::string prior;
  SseDecomposition sse_mean;
  SseDecomposition sse_se;
  double auc_mean = 0.0;
  double auc_se = 0.0;
  int replications_used = 0;
  int failures = 0;
};

struct SimulationReport {
  SimSetup setup = SimSetup::setup1;
  int n = 0;
  int p = 0;
  double rho = 0.0;
  int replications = 0;
  std::vector<ReplicationRecord> records;  // replication-major, prior order kept
  std::vector<PriorAggregate> priors;
};

SimulationReport run_simulation(const SimulationConfig& config);

// indices (ascending) of the k columns with the largest |cor(x_j, y)|;
// ties prefer the lower index, constant columns count as correlation 0
std::vector<int> screen_by_marginal_correlation(const MatrixXd& x,
                                                const VectorXd& y, int k);

struct SplitPlan {
  int train_n = 55;
  int test_n = 5;
  int splits = 100;
  int screen_k = 999;
  bool permute_response = false;  // shuffle training responses as a null control
  std::uint64_t base_seed = 0;
  int threads = 0;
};

struct PredictionRecord {
  int split = 0;
  std::string prior;
  double mspe = 0.0;
  bool failed = false;
  std::string error;
};

struct PredictionSummary {
  std::string prior;
  double mspe_mean = 0.0;
  double mspe_se = 0.0;
  int splits_used = 0;
  int failures = 0;
};

struct PredictionReport {
  std::vector<PredictionRecord> records;  // split-major, prior order kept
  std::vector<PredictionSummary> priors;
  double test_variance_mean = 0.0;  // average sample variance of test responses
};

// Random train/test splits; screening and standardization are refit on each
// training part only, prediction uses the posterior mean coefficients.
PredictionReport train_test_evaluate(const MatrixXd& x_full,
                                     const VectorXd& y_full,
                                     const SplitPlan& plan,
                                     const std::vector<LabeledPrior>& priors,
                                     const SigmaPrior& sp,
                                     const McmcConfig& mc);

// agreement curve: entry x-1 holds |top-x by |t| under a  ∩  top-x under b|
std::vector<int> ordering_agreement(const VectorXd& tstats_a,
                                    const VectorXd& tstats_b);

}  // namespace shrinkage
