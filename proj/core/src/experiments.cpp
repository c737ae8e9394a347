#include "shrinkage/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "shrinkage/distributions.hpp"
#include "shrinkage/parallel.hpp"

namespace shrinkage {

namespace {

// stream ids per replication r: r*kStreamStride for the data,
// r*kStreamStride + 1 + k for the chain of prior k
constexpr std::uint64_t kStreamStride = 64;

void fill_ar1_row(Eigen::RowVectorXd& row, double rho, RngStream& rng) {
  const auto p = row.size();
  double innov = std::sqrt(1.0 - rho * rho);
  row[0] = rng.normal();
  for (Eigen::Index j = 1; j < p; ++j)
    row[j] = rho * row[j - 1] + innov * rng.normal();
}

Dataset gen_common(int n, int p, double rho,
                   const std::vector<int>& signal_positions, double scale,
                   RngStream& rng) {
  if (n < 2) throw std::invalid_argument("gen: n < 2");
  if (!(rho >= 0.0 && rho < 1.0))
    throw std::invalid_argument("gen: rho outside [0,1)");
  Dataset ds;
  ds.beta_true = VectorXd::Zero(p);
  ds.active = signal_positions;
  for (int pos : signal_positions)
    ds.beta_true[pos] = scale * sample_student_t(rng, 3.0);
  ds.x.resize(n, p);
  Eigen::RowVectorXd row(p);
  for (int i = 0; i < n; ++i) {
    fill_ar1_row(row, rho, rng);
    ds.x.row(i) = row;
  }
  ds.sigma2_true = 1.0;
  ds.y = ds.x * ds.beta_true;
  for (int i = 0; i < n; ++i) ds.y[i] += rng.normal();
  return ds;
}

double sample_sd(const VectorXd& v) {
  double m = v.mean();
  return std::sqrt((v.array() - m).square().sum() / double(v.size() - 1));
}

std::vector<int> shuffled_indices(int n, RngStream& rng) {
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  std::iota(idx.begin(), idx.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    int j = int(rng.u01() * (i + 1));
    if (j > i) j = i;
    std::swap(idx[std::size_t(i)], idx[std::size_t(j)]);
  }
  return idx;
}

}  // namespace

Dataset gen_setup1(int n, int p, double rho, RngStream& rng) {
  if (p < 50) throw std::invalid_argument("setup1 requires p >= 50");
  std::vector<int> pos;
  for (int j = 10; j < 15; ++j) pos.push_back(j);
  for (int j = 45; j < 50; ++j) pos.push_back(j);
  return gen_common(n, p, rho, pos, 1.0, rng);
}

Dataset gen_setup2(int n, int p, double rho, RngStream& rng) {
  if (p < 15) throw std::invalid_argument("setup2 requires p >= 15");
  std::vector<int> pos;
  for (int j = 10; j < 15; ++j) pos.push_back(j);
  return gen_common(n, p, rho, pos, 1.0 / std::sqrt(15.0), rng);
}

double setup2_monte_carlo_r2(int p, double rho, int draws, RngStream& rng) {
  if (p < 15) throw std::invalid_argument("setup2 requires p >= 15");
  if (draws < 2) throw std::invalid_argument("need draws >= 2");
  double scale = 1.0 / std::sqrt(15.0);
  Eigen::RowVectorXd row(p);
  double mean = 0.0, m2 = 0.0;
  for (int d = 0; d < draws; ++d) {
    double signal = 0.0;
    fill_ar1_row(row, rho, rng);
    for (int j = 10; j < 15; ++j)
      signal += row[j] * scale * sample_student_t(rng, 3.0);
    double delta = signal - mean;
    mean += delta / double(d + 1);
    m2 += delta * (signal - mean);
  }
  double var = m2 / double(draws - 1);
  return var / (var + 1.0);
}

SseDecomposition sse_decompose(const VectorXd& beta_hat,
                               const VectorXd& beta_true) {
  if (beta_hat.size() != beta_true.size())
    throw std::invalid_argument("sse_decompose: length mismatch");
  SseDecomposition out;
  for (Eigen::Index j = 0; j < beta_hat.size(); ++j) {
    double err = beta_hat[j] - beta_true[j];
    double e2 = err * err;
    double t = std::fabs(beta_true[j]);
    if (t == 0.0)
      out.zero += e2;
    else if (t <= 0.5)
      out.small += e2;
    else
      out.large += e2;
  }
  out.total = out.zero + out.small + out.large;
  return out;
}

double auc_from_tstats(const VectorXd& tstats, const VectorXd& beta_true) {
  const auto p = tstats.size();
  if (p != beta_true.size())
    throw std::invalid_argument("auc: length mismatch");
  std::vector<int> order(static_cast<std::size_t>(p), 0);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> mag(static_cast<std::size_t>(p), 0.0);
  for (Eigen::Index j = 0; j < p; ++j) mag[std::size_t(j)] = std::fabs(tstats[j]);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return mag[std::size_t(a)] < mag[std::size_t(b)]; });
  std::vector<double> rank(static_cast<std::size_t>(p), 0.0);
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() &&
           mag[std::size_t(order[j + 1])] == mag[std::size_t(order[i])])
      ++j;
    double avg = 0.5 * double(i + j) + 1.0;  // average of ranks i+1 .. j+1
    for (std::size_t k = i; k <= j; ++k) rank[std::size_t(order[k])] = avg;
    i = j + 1;
  }
  double rank_sum = 0.0;
  long n1 = 0;
  for (Eigen::Index j = 0; j < p; ++j) {
    if (beta_true[j] != 0.0) {
      rank_sum += rank[std::size_t(j)];
      ++n1;
    }
  }
  long n0 = long(p) - n1;
  if (n1 == 0 || n0 == 0)
    throw std::invalid_argument("auc: needs both zero and nonzero truths");
  double u = rank_sum - 0.5 * double(n1) * double(n1 + 1);
  return u / (double(n1) * double(n0));
}

namespace {

struct Welford {
  double mean = 0.0, m2 = 0.0;
  long n = 0;
  void add(double v) {
    ++n;
    double d = v - mean;
    mean += d / double(n);
    m2 += d * (v - mean);
  }
  double se() const {
    if (n < 2) return 0.0;
    return std::sqrt(m2 / double(n - 1) / double(n));
  }
};

}  // namespace

SimulationReport run_simulation(const SimulationConfig& config) {
  if (config.replications < 1)
    throw std::invalid_argument("simulation: replications < 1");
  if (config.priors.empty())
    throw std::invalid_argument("simulation: no priors");
  if (config.priors.size() >= kStreamStride)
    throw std::invalid_argument("simulation: too many priors");
  validate(config.mcmc);

  const int reps = config.replications;
  const int num_priors = int(config.priors.size());
  SimulationReport report;
  report.setup = config.setup;
  report.n = config.n;
  report.p = config.p;
  report.rho = config.rho;
  report.replications = reps;
  report.records.resize(std::size_t(reps) * std::size_t(num_priors));

  parallel_for_indexed(
      std::size_t(reps),
      [&](std::size_t r) {
        RngStream data_rng(config.base_seed, std::uint64_t(r) * kStreamStride);
        Dataset ds = config.setup == SimSetup::setup1
                         ? gen_setup1(config.n, config.p, config.rho, data_rng)
                         : gen_setup2(config.n, config.p, config.rho, data_rng);
        Standardizer st = standardizer_fit(ds.x, ds.y);
        MatrixXd xs = standardize_x(st, ds.x);
        VectorXd yc = center_y(st, ds.y);
        VectorXd truth_std =
            ds.beta_true.cwiseProduct(st.x_scale);  // truth on the fit scale
        for (int k = 0; k < num_priors; ++k) {
          ReplicationRecord rec;
          rec.replication = int(r);
          rec.prior = config.priors[std::size_t(k)].name;
          try {
            PosteriorDraws draws = run_chain(
                config.priors[std::size_t(k)].prior, config.sigma_prior, xs,
                yc, config.mcmc, config.base_seed,
                std::uint64_t(r) * kStreamStride + 1 + std::uint64_t(k));
            FitSummary fs = summarize(draws);
            rec.sse = sse_decompose(fs.mean, truth_std);
            rec.auc = auc_from_tstats(fs.t_stat, ds.beta_true);
          } catch (const NumericalError& e) {
            rec.failed = true;
            rec.error = e.what();
          }
          report.records[r * std::size_t(num_priors) + std::size_t(k)] =
              std::move(rec);
        }
      },
      config.threads);

  for (int k = 0; k < num_priors; ++k) {
    PriorAggregate agg;
    agg.prior = config.priors[std::size_t(k)].name;
    Welford wz, ws, wl, wt, wa;
    for (int r = 0; r < reps; ++r) {
      const auto& rec =
          report.records[std::size_t(r) * std::size_t(num_priors) +
                         std::size_t(k)];
      if (rec.failed) {
        ++agg.failures;
        continue;
      }
      wz.add(rec.sse.zero);
      ws.add(rec.sse.small);
      wl.add(rec.sse.large);
      wt.add(rec.sse.total);
      wa.add(rec.auc);
    }
    agg.replications_used = int(wt.n);
    agg.sse_mean = {wz.mean, ws.mean, wl.mean, wt.mean};
    agg.sse_se = {wz.se(), ws.se(), wl.se(), wt.se()};
    agg.auc_mean = wa.mean;
    agg.auc_se = wa.se();
    report.priors.push_back(std::move(agg));
  }
  return report;
}

std::vector<int> screen_by_marginal_correlation(const MatrixXd& x,
                                                const VectorXd& y, int k) {
  const int p = int(x.cols());
  const int n = int(x.rows());
  if (k < 1 || k > p) throw std::invalid_argument("screen: bad k");
  if (y.size() != n) throw std::invalid_argument("screen: length mismatch");
  if (n < 2) throw std::invalid_argument("screen: n < 2");
  double ym = y.mean();
  VectorXd yc = y.array() - ym;
  double ynorm = yc.norm();
  std::vector<double> score(std::size_t(p), 0.0);
  if (ynorm > 0.0) {
    for (int j = 0; j < p; ++j) {
      double xm = x.col(j).mean();
      VectorXd xc = x.col(j).array() - xm;
      double xnorm = xc.norm();
      if (xnorm > 0.0)
        score[std::size_t(j)] = std::fabs(xc.dot(yc) / (xnorm * ynorm));
    }
  }
  std::vector<int> order(static_cast<std::size_t>(p), 0);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return score[std::size_t(a)] > score[std::size_t(b)];
  });
  std::vector<int> keep(order.begin(), order.begin() + k);
  std::sort(keep.begin(), keep.end());
  return keep;
}

PredictionReport train_test_evaluate(const MatrixXd& x_full,
                                     const VectorXd& y_full,
                                     const SplitPlan& plan,
                                     const std::vector<LabeledPrior>& priors,
                                     const SigmaPrior& sp,
                                     const McmcConfig& mc) {
  const int n = int(x_full.rows());
  if (y_full.size() != n)
    throw std::invalid_argument("evaluate: length mismatch");
  if (plan.train_n < 3 || plan.test_n < 2 || plan.train_n + plan.test_n > n)
    throw std::invalid_argument("evaluate: bad split sizes");
  if (plan.splits < 1) throw std::invalid_argument("evaluate: splits < 1");
  if (priors.empty()) throw std::invalid_argument("evaluate: no priors");
  if (priors.size() >= kStreamStride)
    throw std::invalid_argument("evaluate: too many priors");
  validate(mc);

  const int num_priors = int(priors.size());
  PredictionReport report;
  report.records.resize(std::size_t(plan.splits) * std::size_t(num_priors));
  std::vector<double> test_vars(std::size_t(plan.splits), 0.0);

  parallel_for_indexed(
      std::size_t(plan.splits),
      [&](std::size_t s) {
        RngStream split_rng(plan.base_seed, std::uint64_t(s) * kStreamStride);
        std::vector<int> perm = shuffled_indices(n, split_rng);
        std::vector<int> train_idx(perm.begin(), perm.begin() + plan.train_n);
        std::vector<int> test_idx(perm.begin() + plan.train_n,
                                  perm.begin() + plan.train_n + plan.test_n);
        MatrixXd x_train = x_full(train_idx, Eigen::all);
        VectorXd y_train = y_full(train_idx);
        MatrixXd x_test = x_full(test_idx, Eigen::all);
        VectorXd y_test = y_full(test_idx);
        if (plan.permute_response) {
          std::vector<int> yperm = shuffled_indices(plan.train_n, split_rng);
          VectorXd shuffled(plan.train_n);
          for (int i = 0; i < plan.train_n; ++i)
            shuffled[i] = y_train[yperm[std::size_t(i)]];
          y_train = shuffled;
        }
        double sd = sample_sd(y_test);
        test_vars[s] = sd * sd;

        std::vector<int> cols =
            screen_by_marginal_correlation(x_train, y_train, plan.screen_k);
        MatrixXd x_train_s = x_train(Eigen::all, cols);
        MatrixXd x_test_s = x_test(Eigen::all, cols);
        Standardizer st = standardizer_fit(x_train_s, y_train);
        MatrixXd xs = standardize_x(st, x_train_s);
        VectorXd yc = center_y(st, y_train);

        for (int k = 0; k < num_priors; ++k) {
          PredictionRecord rec;
          rec.split = int(s);
          rec.prior = priors[std::size_t(k)].name;
          try {
            PosteriorDraws draws = run_chain(
                priors[std::size_t(k)].prior, sp, xs, yc, mc, plan.base_seed,
                std::uint64_t(s) * kStreamStride + 1 + std::uint64_t(k));
            FitSummary fs = summarize(draws);
            VectorXd pred = predict_raw(st, x_test_s, fs.mean);
            rec.mspe = (pred - y_test).squaredNorm() / double(plan.test_n);
          } catch (const NumericalError& e) {
            rec.failed = true;
            rec.error = e.what();
          }
          report.records[s * std::size_t(num_priors) + std::size_t(k)] =
              std::move(rec);
        }
      },
      plan.threads);

  Welford wv;
  for (double v : test_vars) wv.add(v);
  report.test_variance_mean = wv.mean;
  for (int k = 0; k < num_priors; ++k) {
    PredictionSummary sum;
    sum.prior = priors[std::size_t(k)].name;
    Welford wm;
    for (int s = 0; s < plan.splits; ++s) {
      const auto& rec =
          report.records[std::size_t(s) * std::size_t(num_priors) +
                         std::size_t(k)];
      if (rec.failed) {
        ++sum.failures;
        continue;
      }
      wm.add(rec.mspe);
    }
    sum.splits_used = int(wm.n);
    sum.mspe_mean = wm.mean;
    sum.mspe_se = wm.se();
    report.priors.push_back(std::move(sum));
  }
  return report;
}

std::vector<int> ordering_agreement(const VectorXd& tstats_a,
                                    const VectorXd& tstats_b) {
  const auto p = tstats_a.size();
  if (p != tstats_b.size())
    throw std::invalid_argument("agreement: length mismatch");
  auto rank_order = [&](const VectorXd& t) {
    std::vector<int> order(static_cast<std::size_t>(p), 0);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return std::fabs(t[a]) > std::fabs(t[b]);
    });
    return order;
  };
  std::vector<int> oa = rank_order(tstats_a);
  std::vector<int> ob = rank_order(tstats_b);
  std::vector<char> in_a(std::size_t(p), 0), in_b(std::size_t(p), 0);
  std::vector<int> curve(std::size_t(p), 0);
  int count = 0;
  for (Eigen::Index x = 0; x < p; ++x) {
    int ea = oa[std::size_t(x)];
    int eb = ob[std::size_t(x)];
    in_a[std::size_t(ea)] = 1;
    in_b[std::size_t(eb)] = 1;
    if (in_b[std::size_t(ea)]) ++count;
    if (eb != ea && in_a[std::size_t(eb)]) ++count;
    curve[std::size_t(x)] = count;
  }
  return curve;
}

}  // namespace shrinkage
