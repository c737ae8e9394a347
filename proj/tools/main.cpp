// Command-line driver: fit, simulate, density, screen, predict, diagnose.
// Thin wrapper over the library; all tabular output is CSV with exact
// 17-significant-digit doubles, run metadata goes to JSON. Exit codes:
// 0 success, 1 numerical failure inside a sampler, 2 input/usage error.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "shrinkage/dataset.hpp"
#include "shrinkage/density.hpp"
#include "shrinkage/diagnostics.hpp"
#include "shrinkage/experiments.hpp"
#include "shrinkage/gibbs.hpp"
#include "shrinkage/io.hpp"
#include "shrinkage/priors.hpp"

namespace {

using nlohmann::json;
using namespace shrinkage;

// Tracks which values came from the command line or a config file so that
// defaults, config-file values, and explicit flags layer in that order.
class FlagBag {
 public:
  explicit FlagBag(CLI::App* sub) : sub_(sub) {}

  template <class T>
  CLI::Option* add(const std::string& flag, T& var, const std::string& desc) {
    CLI::Option* opt = sub_->add_option("--" + flag, var, desc);
    entries_[flag] = {opt, [&var](const json& v) { var = v.get<T>(); }};
    return opt;
  }

  CLI::Option* add_flag(const std::string& flag, bool& var,
                        const std::string& desc) {
    CLI::Option* opt = sub_->add_flag("--" + flag, var, desc);
    entries_[flag] = {opt, [&var](const json& v) { var = v.get<bool>(); }};
    return opt;
  }

  // config file values fill in whatever explicit flags did not set
  void apply_config(const std::string& path) {
    if (path.empty()) return;
    json cfg = read_json_file(path);
    if (!cfg.is_object())
      throw std::invalid_argument("config: top level must be an object");
    for (const auto& [key, value] : cfg.items()) {
      auto it = entries_.find(key);
      if (it == entries_.end())
        throw std::invalid_argument("config: unknown key '" + key + "'");
      if (it->second.option->count() > 0) continue;  // flag wins
      try {
        it->second.set(value);
      } catch (const json::exception& e) {
        throw std::invalid_argument("config: key '" + key +
                                    "': " + e.what());
      }
      json_applied_.insert(key);
    }
  }

  bool provided(const std::string& flag) const {
    auto it = entries_.find(flag);
    bool from_cli = it != entries_.end() && it->second.option->count() > 0;
    return from_cli || json_applied_.count(flag) > 0;
  }

 private:
  struct Entry {
    CLI::Option* option = nullptr;
    std::function<void(const json&)> set;
  };
  CLI::App* sub_;
  std::map<std::string, Entry> entries_;
  std::set<std::string> json_applied_;
};

// flags shared by every chain-running subcommand
struct SamplerArgs {
  std::string prior = "r2d2";
  double a = 0.0;
  double b = 0.5;
  double a_pi = 0.0;
  double a_d = 0.5;
  double tau = 1.0;
  int iters = 10000;
  int burnin = 5000;
  int thin = 1;
  std::uint64_t seed = 0;
  std::string route = "auto";
  double fixed_sigma2 = std::nan("");  // NaN = sample the noise variance
  bool sample_sigma2 = false;
  double a1 = 0.001;
  double b1 = 0.001;
};

void register_prior_flags(FlagBag& bag, SamplerArgs& sa) {
  bag.add("prior", sa.prior, "prior family: r2d2, dl, hs, hs+")
      ->check(CLI::IsMember({"r2d2", "dl", "hs", "hs+"}));
  bag.add("a", sa.a, "r2d2 global shape a (default p * a-pi)");
  bag.add("b", sa.b, "r2d2 global tail parameter b");
  bag.add("a-pi", sa.a_pi, "r2d2 Dirichlet concentration (default 1/(2p))");
  bag.add("a-d", sa.a_d, "dl concentration");
  bag.add("tau", sa.tau, "hs / hs+ global scale");
}

void register_chain_flags(FlagBag& bag, SamplerArgs& sa) {
  bag.add("iters", sa.iters, "total Gibbs iterations");
  bag.add("burnin", sa.burnin, "burn-in iterations discarded");
  bag.add("thin", sa.thin, "keep every thin-th draw");
  bag.add("seed", sa.seed, "RNG seed; reruns with the same seed are identical");
  bag.add("route", sa.route, "coefficient solver: auto, direct, woodbury")
      ->check(CLI::IsMember({"auto", "direct", "woodbury"}));
  bag.add("fixed-sigma2", sa.fixed_sigma2,
          "hold the noise variance at this value instead of sampling it");
  bag.add_flag("sample-sigma2", sa.sample_sigma2,
               "sample the noise variance even where fixing is the default");
  bag.add("a1", sa.a1, "noise variance prior shape");
  bag.add("b1", sa.b1, "noise variance prior rate");
}

BetaRoute parse_route(const std::string& r) {
  if (r == "auto") return BetaRoute::automatic;
  if (r == "direct") return BetaRoute::direct;
  if (r == "woodbury") return BetaRoute::woodbury;
  throw std::invalid_argument("route must be auto, direct, or woodbury");
}

McmcConfig build_mcmc(const SamplerArgs& sa) {
  McmcConfig mc;
  mc.iterations = sa.iters;
  mc.burnin = sa.burnin;
  mc.thin = sa.thin;
  mc.route = parse_route(sa.route);
  if (!sa.sample_sigma2 && !std::isnan(sa.fixed_sigma2))
    mc.fixed_sigma2 = sa.fixed_sigma2;
  validate(mc);
  return mc;
}

PriorSpec resolve_single_prior(const FlagBag& bag, const SamplerArgs& sa,
                               int p) {
  if (sa.prior == "r2d2") {
    double a_pi = bag.provided("a-pi") ? sa.a_pi : 1.0 / (2.0 * p);
    if (bag.provided("a")) return make_r2d2_full(sa.a, sa.b, a_pi);
    return make_r2d2_reduced(p, sa.b, a_pi);
  }
  if (sa.prior == "dl") return DlParams{sa.a_d};
  if (sa.prior == "hs") return HsParams{sa.tau, true};
  if (sa.prior == "hs+") return HsPlusParams{sa.tau, true};
  throw std::invalid_argument("prior must be r2d2, dl, hs, or hs+");
}

std::vector<LabeledPrior> prior_panel(const FlagBag& bag,
                                      const SamplerArgs& sa, int p, int n) {
  if (bag.provided("prior"))
    return {{sa.prior, resolve_single_prior(bag, sa, p)}};
  return {{"r2d2", default_r2d2(R2d2Default::half_half, p, n)},
          {"dl", DlParams{0.5}},
          {"hs", HsParams{}},
          {"hs+", HsPlusParams{}}};
}

json prior_to_json(const PriorSpec& prior) {
  json j;
  j["family"] = prior_label(prior);
  if (const auto* r = std::get_if<R2d2Params>(&prior)) {
    j["a"] = r->a;
    j["b"] = r->b;
    j["a_pi"] = r->a_pi;
    j["reduced"] = r->reduced;
  } else if (const auto* d = std::get_if<DlParams>(&prior)) {
    j["a_d"] = d->a_d;
  } else if (const auto* h = std::get_if<HsParams>(&prior)) {
    j["tau"] = h->tau;
  } else if (const auto* hp = std::get_if<HsPlusParams>(&prior)) {
    j["tau"] = hp->tau;
  }
  return j;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  return out;
}

// ----------------------------------------------------------------- fit

struct FitArgs {
  SamplerArgs sa;
  std::string in_x, in_y, out = "fit", config;
  bool no_standardize = false;
};

void run_fit(const FlagBag& bag, const FitArgs& args) {
  MatrixXd x = read_matrix_csv(args.in_x);
  VectorXd y = read_vector_csv(args.in_y);
  const int n = int(x.rows());
  const int p = int(x.cols());
  if (y.size() != n)
    throw std::invalid_argument("fit: X has " + std::to_string(n) +
                                " rows but y has " +
                                std::to_string(y.size()) + " entries");

  Standardizer st;
  MatrixXd xs;
  VectorXd yc;
  if (args.no_standardize) {
    xs = x;
    yc = y;
    st.x_center = VectorXd::Zero(p);
    st.x_scale = VectorXd::Ones(p);
    st.y_center = 0.0;
  } else {
    st = standardizer_fit(x, y);
    xs = standardize_x(st, x);
    yc = center_y(st, y);
  }

  PriorSpec prior = resolve_single_prior(bag, args.sa, p);
  SigmaPrior sp{args.sa.a1, args.sa.b1};
  McmcConfig mc = build_mcmc(args.sa);
  PosteriorDraws draws = run_chain(prior, sp, xs, yc, mc, args.sa.seed, 0);
  FitSummary fs = summarize(draws);

  const int kept = draws.retained();
  MatrixXd table(kept, p + 2);
  table.leftCols(p) = draws.beta;
  table.col(p) = draws.sigma2;
  table.col(p + 1) = draws.global;
  std::vector<std::string> header;
  for (int j = 0; j < p; ++j) header.push_back("b" + std::to_string(j));
  header.push_back("sigma2");
  header.push_back("global");
  write_matrix_csv(args.out + "_draws.csv", table, header);

  VectorXd mean_raw = args.no_standardize
                          ? fs.mean
                          : coefficients_raw(st, fs.mean);
  MatrixXd summary(p, 8);
  for (int j = 0; j < p; ++j) {
    summary(j, 0) = j;
    summary(j, 1) = fs.mean[j];
    summary(j, 2) = fs.sd[j];
    summary(j, 3) = fs.t_stat[j];
    summary(j, 4) = fs.q025[j];
    summary(j, 5) = fs.q500[j];
    summary(j, 6) = fs.q975[j];
    summary(j, 7) = mean_raw[j];
  }
  write_matrix_csv(args.out + "_summary.csv", summary,
                   {"coefficient", "mean", "sd", "t", "q025", "q500", "q975",
                    "mean_raw"});

  json meta;
  meta["command"] = "fit";
  meta["n"] = n;
  meta["p"] = p;
  meta["prior"] = prior_to_json(prior);
  meta["iterations"] = mc.iterations;
  meta["burnin"] = mc.burnin;
  meta["thin"] = mc.thin;
  meta["retained"] = kept;
  meta["seed"] = args.sa.seed;
  meta["route"] = args.sa.route;
  meta["standardized"] = !args.no_standardize;
  meta["sigma2_fixed"] = bool(mc.fixed_sigma2);
  meta["sigma2_mean"] = fs.sigma2_mean;
  meta["global_mean"] = fs.global_mean;
  meta["sigma_prior"] = {{"a1", args.sa.a1}, {"b1", args.sa.b1}};
  if (!args.no_standardize) {
    meta["x_center"] = std::vector<double>(st.x_center.data(),
                                           st.x_center.data() + p);
    meta["x_scale"] = std::vector<double>(st.x_scale.data(),
                                          st.x_scale.data() + p);
    meta["y_center"] = st.y_center;
  }
  write_json_file(args.out + "_meta.json", meta);

  std::printf("fit: n=%d p=%d prior=%s retained=%d\n", n, p,
              prior_label(prior).c_str(), kept);
  std::printf("%12s %12s %12s %12s\n", "coefficient", "mean", "sd", "t");
  for (int j = 0; j < std::min(p, 10); ++j)
    std::printf("%12d %12.5f %12.5f %12.3f\n", j, fs.mean[j], fs.sd[j],
                fs.t_stat[j]);
  if (p > 10) std::printf("  ... (%d more rows in %s_summary.csv)\n", p - 10,
                          args.out.c_str());
}

void setup_fit(CLI::App& app) {
  auto sub = app.add_subcommand("fit", "sample a posterior on given data");
  auto bag = std::make_shared<FlagBag>(sub);
  auto args = std::make_shared<FitArgs>();
  register_prior_flags(*bag, args->sa);
  register_chain_flags(*bag, args->sa);
  bag->add("in-x", args->in_x, "design matrix CSV")->required();
  bag->add("in-y", args->in_y, "response vector CSV")->required();
  bag->add("out", args->out, "output path prefix");
  bag->add_flag("no-standardize", args->no_standardize,
                "fit on the raw scale without centering/scaling");
  sub->add_option("--config", args->config, "JSON file with flag defaults");
  sub->callback([bag, args]() {
    bag->apply_config(args->config);
    run_fit(*bag, *args);
  });
}

// ------------------------------------------------------------ simulate

struct SimulateArgs {
  SamplerArgs sa;
  int setup = 1;
  int n = 60;
  int p = 50;
  double rho = 0.5;
  int reps = 50;
  int threads = 0;
  std::string out = "sim", config;
};

void run_simulate(const FlagBag& bag, const SimulateArgs& args) {
  SimulationConfig cfg;
  cfg.setup = args.setup == 1 ? SimSetup::setup1 : SimSetup::setup2;
  cfg.n = args.n;
  cfg.p = args.p;
  cfg.rho = args.rho;
  cfg.replications = args.reps;
  cfg.priors = prior_panel(bag, args.sa, args.p, args.n);
  cfg.sigma_prior = SigmaPrior{args.sa.a1, args.sa.b1};
  cfg.mcmc = build_mcmc(args.sa);
  cfg.base_seed = args.sa.seed;
  cfg.threads = args.threads;

  SimulationReport rep = run_simulation(cfg);

  auto records = open_out(args.out + "_records.csv");
  records << "replication,prior,sse_zero,sse_small,sse_large,sse_total,auc,"
             "failed\n";
  for (const auto& r : rep.records) {
    records << r.replication << ',' << r.prior << ','
            << format_double(r.sse.zero) << ',' << format_double(r.sse.small)
            << ',' << format_double(r.sse.large) << ','
            << format_double(r.sse.total) << ',' << format_double(r.auc)
            << ',' << (r.failed ? 1 : 0) << '\n';
  }
  records.close();

  auto summary = open_out(args.out + "_summary.csv");
  summary << "prior,sse_zero_mean,sse_zero_se,sse_small_mean,sse_small_se,"
             "sse_large_mean,sse_large_se,sse_total_mean,sse_total_se,"
             "auc_mean,auc_se,replications_used,failures\n";
  for (const auto& a : rep.priors) {
    summary << a.prior << ',' << format_double(a.sse_mean.zero) << ','
            << format_double(a.sse_se.zero) << ','
            << format_double(a.sse_mean.small) << ','
            << format_double(a.sse_se.small) << ','
            << format_double(a.sse_mean.large) << ','
            << format_double(a.sse_se.large) << ','
            << format_double(a.sse_mean.total) << ','
            << format_double(a.sse_se.total) << ','
            << format_double(a.auc_mean) << ',' << format_double(a.auc_se)
            << ',' << a.replications_used << ',' << a.failures << '\n';
  }
  summary.close();

  json meta;
  meta["command"] = "simulate";
  meta["setup"] = args.setup;
  meta["n"] = args.n;
  meta["p"] = args.p;
  meta["rho"] = args.rho;
  meta["replications"] = args.reps;
  meta["iterations"] = cfg.mcmc.iterations;
  meta["burnin"] = cfg.mcmc.burnin;
  meta["thin"] = cfg.mcmc.thin;
  meta["seed"] = args.sa.seed;
  meta["sigma2_fixed"] = bool(cfg.mcmc.fixed_sigma2);
  json priors = json::array();
  for (const auto& lp : cfg.priors) priors.push_back(prior_to_json(lp.prior));
  meta["priors"] = priors;
  json failures = json::array();
  for (const auto& r : rep.records)
    if (r.failed)
      failures.push_back({{"replication", r.replication},
                          {"prior", r.prior},
                          {"error", r.error}});
  meta["failures"] = failures;
  write_json_file(args.out + "_meta.json", meta);

  // presentation convention: values scaled by 100, two decimals
  std::printf("simulate: setup=%d n=%d p=%d rho=%g reps=%d (all x100)\n",
              args.setup, args.n, args.p, args.rho, args.reps);
  std::printf("%-8s %14s %14s %14s %14s %14s\n", "prior", "sse_zero",
              "sse_small", "sse_large", "sse_total", "auc");
  for (const auto& a : rep.priors) {
    std::printf("%-8s %7.2f (%4.2f) %7.2f (%4.2f) %7.2f (%4.2f) "
                "%7.2f (%4.2f) %7.2f (%4.2f)\n",
                a.prior.c_str(), 100.0 * a.sse_mean.zero,
                100.0 * a.sse_se.zero, 100.0 * a.sse_mean.small,
                100.0 * a.sse_se.small, 100.0 * a.sse_mean.large,
                100.0 * a.sse_se.large, 100.0 * a.sse_mean.total,
                100.0 * a.sse_se.total, 100.0 * a.auc_mean,
                100.0 * a.auc_se);
  }
}

void setup_simulate(CLI::App& app) {
  auto sub = app.add_subcommand(
      "simulate", "replicated synthetic-data comparison of the priors");
  auto bag = std::make_shared<FlagBag>(sub);
  auto args = std::make_shared<SimulateArgs>();
  register_prior_flags(*bag, args->sa);
  register_chain_flags(*bag, args->sa);
  args->sa.iters = 2000;
  args->sa.burnin = 1000;
  args->sa.fixed_sigma2 = 1.0;  // matched-noise protocol default
  bag->add("setup", args->setup, "design family: 1 or 2")
      ->check(CLI::IsMember({1, 2}));
  bag->add("n", args->n, "observations per replication");
  bag->add("p", args->p, "number of covariates");
  bag->add("rho", args->rho, "neighbor correlation of the design");
  bag->add("reps", args->reps, "number of replications");
  bag->add("threads", args->threads, "worker threads (0 = automatic)");
  bag->add("out", args->out, "output path prefix");
  sub->add_option("--config", args->config, "JSON file with flag defaults");
  sub->callback([bag, args]() {
    bag->apply_config(args->config);
    run_simulate(*bag, *args);
  });
}

// ------------------------------------------------------------- density

struct DensityArgs {
  SamplerArgs sa;
  double grid_min = 1e-3;
  double grid_max = 10.0;
  int grid_points = 200;
  bool linear = false;
  std::string out = "density.csv", config;
};

void run_density(const FlagBag& bag, const DensityArgs& args) {
  if (!(args.grid_min > 0.0) || !(args.grid_max > args.grid_min))
    throw std::invalid_argument("density: need 0 < grid-min < grid-max");
  if (args.grid_points < 2)
    throw std::invalid_argument("density: need at least 2 grid points");

  SamplerArgs sa = args.sa;
  PriorSpec prior;
  if (sa.prior == "r2d2") {
    double a_pi = bag.provided("a-pi") ? sa.a_pi : 0.5;
    double a = bag.provided("a") ? sa.a : a_pi;
    prior = make_r2d2_full(a, sa.b, a_pi);
  } else {
    prior = resolve_single_prior(bag, sa, 1);
  }

  std::vector<double> grid(std::size_t(args.grid_points), 0.0);
  if (args.linear) {
    double step = (args.grid_max - args.grid_min) / (args.grid_points - 1);
    for (int i = 0; i < args.grid_points; ++i)
      grid[std::size_t(i)] = args.grid_min + step * i;
  } else {
    double lo = std::log(args.grid_min), hi = std::log(args.grid_max);
    double step = (hi - lo) / (args.grid_points - 1);
    for (int i = 0; i < args.grid_points; ++i)
      grid[std::size_t(i)] = std::exp(lo + step * i);
  }

  DensityCurve curve = marginal_curve(prior, grid);
  auto out = open_out(args.out);
  out << "beta,log_density,prior\n";
  for (std::size_t i = 0; i < curve.beta.size(); ++i)
    out << format_double(curve.beta[i]) << ','
        << format_double(curve.log_density[i]) << ',' << curve.label << '\n';
  out.close();
  std::printf("density: wrote %d points for %s to %s\n", args.grid_points,
              curve.label.c_str(), args.out.c_str());
}

void setup_density(CLI::App& app) {
  auto sub = app.add_subcommand(
      "density", "evaluate a marginal coefficient prior density on a grid");
  auto bag = std::make_shared<FlagBag>(sub);
  auto args = std::make_shared<DensityArgs>();
  register_prior_flags(*bag, args->sa);
  bag->add("grid-min", args->grid_min, "smallest |beta| evaluated (> 0)");
  bag->add("grid-max", args->grid_max, "largest |beta| evaluated");
  bag->add("grid-points", args->grid_points, "number of grid points");
  bag->add_flag("linear", args->linear,
                "evenly spaced grid instead of log spaced");
  bag->add("out", args->out, "output CSV path");
  sub->add_option("--config", args->config, "JSON file with flag defaults");
  sub->callback([bag, args]() {
    bag->apply_config(args->config);
    run_density(*bag, *args);
  });
}

// -------------------------------------------------------------- screen

struct ScreenArgs {
  std::string in_x, in_y, out = "screen.csv", config;
  int k = 0;
};

void run_screen(const ScreenArgs& args) {
  MatrixXd x = read_matrix_csv(args.in_x);
  VectorXd y = read_vector_csv(args.in_y);
  std::vector<int> cols = screen_by_marginal_correlation(x, y, args.k);
  MatrixXd table(int(cols.size()), 1);
  for (int i = 0; i < int(cols.size()); ++i)
    table(i, 0) = cols[std::size_t(i)];
  write_matrix_csv(args.out, table, {"column"});
  std::printf("screen: kept %d of %d columns -> %s\n", int(cols.size()),
              int(x.cols()), args.out.c_str());
}

void setup_screen(CLI::App& app) {
  auto sub = app.add_subcommand(
      "screen", "keep the k columns most correlated with the response");
  auto bag = std::make_shared<FlagBag>(sub);
  auto args = std::make_shared<ScreenArgs>();
  bag->add("in-x", args->in_x, "design matrix CSV")->required();
  bag->add("in-y", args->in_y, "response vector CSV")->required();
  bag->add("k", args->k, "number of columns to keep")->required();
  bag->add("out", args->out, "output CSV path");
  sub->add_option("--config", args->config, "JSON file with flag defaults");
  sub->callback([bag, args]() {
    bag->apply_config(args->config);
    run_screen(*args);
  });
}

// ------------------------------------------------------------- predict

struct PredictArgs {
  SamplerArgs sa;
  std::string in_x, in_y, out = "predict", config;
  int train_n = 55;
  int test_n = 5;
  int splits = 100;
  int screen_k = 999;
  bool permute = false;
  int threads = 0;
};

void run_predict(const FlagBag& bag, const PredictArgs& args) {
  MatrixXd x = read_matrix_csv(args.in_x);
  VectorXd y = read_vector_csv(args.in_y);

  SplitPlan plan;
  plan.train_n = args.train_n;
  plan.test_n = args.test_n;
  plan.splits = args.splits;
  plan.screen_k = std::min(args.screen_k, int(x.cols()));
  plan.permute_response = args.permute;
  plan.base_seed = args.sa.seed;
  plan.threads = args.threads;

  auto priors = prior_panel(bag, args.sa, plan.screen_k, plan.train_n);
  SigmaPrior sp{args.sa.a1, args.sa.b1};
  McmcConfig mc = build_mcmc(args.sa);

  PredictionReport rep = train_test_evaluate(x, y, plan, priors, sp, mc);

  auto records = open_out(args.out + "_records.csv");
  records << "split,prior,mspe,failed\n";
  for (const auto& r : rep.records)
    records << r.split << ',' << r.prior << ',' << format_double(r.mspe)
            << ',' << (r.failed ? 1 : 0) << '\n';
  records.close();

  auto summary = open_out(args.out + "_summary.csv");
  summary << "prior,mspe_mean,mspe_se,splits_used,failures\n";
  for (const auto& s : rep.priors)
    summary << s.prior << ',' << format_double(s.mspe_mean) << ','
            << format_double(s.mspe_se) << ',' << s.splits_used << ','
            << s.failures << '\n';
  summary.close();

  json meta;
  meta["command"] = "predict";
  meta["n"] = int(x.rows());
  meta["p"] = int(x.cols());
  meta["train_n"] = plan.train_n;
  meta["test_n"] = plan.test_n;
  meta["splits"] = plan.splits;
  meta["screen_k"] = plan.screen_k;
  meta["permuted"] = plan.permute_response;
  meta["seed"] = args.sa.seed;
  meta["iterations"] = mc.iterations;
  meta["burnin"] = mc.burnin;
  meta["sigma2_fixed"] = bool(mc.fixed_sigma2);
  meta["test_variance_mean"] = rep.test_variance_mean;
  json priors_j = json::array();
  for (const auto& lp : priors) priors_j.push_back(prior_to_json(lp.prior));
  meta["priors"] = priors_j;
  write_json_file(args.out + "_meta.json", meta);

  std::printf("predict: %d splits of %d train / %d test, screen to %d\n",
              plan.splits, plan.train_n, plan.test_n, plan.screen_k);
  std::printf("test response variance (mean) %.4f\n", rep.test_variance_mean);
  for (const auto& s : rep.priors)
    std::printf("%-8s mspe %.4f (%.4f)\n", s.prior.c_str(), s.mspe_mean,
                s.mspe_se);
}

void setup_predict(CLI::App& app) {
  auto sub = app.add_subcommand(
      "predict", "repeated train/test split prediction comparison");
  auto bag = std::make_shared<FlagBag>(sub);
  auto args = std::make_shared<PredictArgs>();
  register_prior_flags(*bag, args->sa);
  register_chain_flags(*bag, args->sa);
  args->sa.iters = 2000;
  args->sa.burnin = 1000;
  args->sa.fixed_sigma2 = 1.0;  // matched-noise protocol default
  bag->add("in-x", args->in_x, "design matrix CSV")->required();
  bag->add("in-y", args->in_y, "response vector CSV")->required();
  bag->add("train-n", args->train_n, "training rows per split");
  bag->add("test-n", args->test_n, "test rows per split");
  bag->add("splits", args->splits, "number of random splits");
  bag->add("screen-k", args->screen_k,
           "columns kept by correlation screening (clipped to p)");
  bag->add_flag("permute", args->permute,
                "shuffle training responses as a null control");
  bag->add("threads", args->threads, "worker threads (0 = automatic)");
  bag->add("out", args->out, "output path prefix");
  sub->add_option("--config", args->config, "JSON file with flag defaults");
  sub->callback([bag, args]() {
    bag->apply_config(args->config);
    run_predict(*bag, *args);
  });
}

// ------------------------------------------------------------ diagnose

struct DiagnoseArgs {
  std::string in, out = "diagnostics.csv", config;
  int max_lag = 50;
};

void run_diagnose(const DiagnoseArgs& args) {
  MatrixXd draws = read_matrix_csv(args.in);
  const int p = int(draws.cols());
  const int n = int(draws.rows());
  if (args.max_lag < 1)
    throw std::invalid_argument("diagnose: max-lag must be at least 1");
  int lags = std::min(args.max_lag, n - 1);

  MatrixXd table(p, 6 + lags);
  for (int j = 0; j < p; ++j) {
    ChainDiagnostics cd = diagnose_chain(draws.col(j));
    table(j, 0) = j;
    table(j, 1) = cd.mean;
    table(j, 2) = cd.sd;
    table(j, 3) = cd.ess;
    table(j, 4) = cd.act;
    table(j, 5) = cd.degenerate ? 1.0 : 0.0;
    std::vector<double> acf = autocorrelations(draws.col(j), lags);
    for (int k = 1; k <= lags; ++k) table(j, 5 + k) = acf[std::size_t(k)];
  }
  std::vector<std::string> header = {"column", "mean",  "sd",
                                     "ess",    "act", "degenerate"};
  for (int k = 1; k <= lags; ++k) header.push_back("acf_" + std::to_string(k));
  write_matrix_csv(args.out, table, header);

  std::printf("diagnose: %d chains of length %d -> %s\n", p, n,
              args.out.c_str());
  for (int j = 0; j < std::min(p, 10); ++j)
    std::printf("  column %d: ess %.1f of %d\n", j, table(j, 3), n);
}

void setup_diagnose(CLI::App& app) {
  auto sub = app.add_subcommand(
      "diagnose", "effective sample size and autocorrelation of draws");
  auto bag = std::make_shared<FlagBag>(sub);
  auto args = std::make_shared<DiagnoseArgs>();
  bag->add("in", args->in, "draws CSV, one chain per column")->required();
  bag->add("max-lag", args->max_lag, "autocorrelation lags to report");
  bag->add("out", args->out, "output CSV path");
  sub->add_option("--config", args->config, "JSON file with flag defaults");
  sub->callback([bag, args]() {
    bag->apply_config(args->config);
    run_diagnose(*args);
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian global-local shrinkage regression toolkit"};
  app.require_subcommand(1);
  setup_fit(app);
  setup_simulate(app);
  setup_density(app);
  setup_screen(app);
  setup_predict(app);
  setup_diagnose(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
