// Microbenchmarks for the hot paths: scalar distribution draws, the special
// function behind the marginal densities, both coefficient-update routes,
// and full Gibbs sweeps for each prior family.

#include <benchmark/benchmark.h>

#include <cstdint>

#include "shrinkage/distributions.hpp"
#include "shrinkage/gibbs.hpp"
#include "shrinkage/priors.hpp"
#include "shrinkage/rng.hpp"
#include "shrinkage/special.hpp"

namespace {

using namespace shrinkage;

void bm_normal_draw(benchmark::State& state) {
  RngStream rng(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(rng.normal());
}
BENCHMARK(bm_normal_draw);

void bm_gamma_draw(benchmark::State& state) {
  RngStream rng(2, 0);
  double shape = state.range(0) / 100.0;
  for (auto _ : state)
    benchmark::DoNotOptimize(sample_gamma(rng, shape, 1.0));
}
BENCHMARK(bm_gamma_draw)->Arg(5)->Arg(50)->Arg(250);  // shape 0.05, 0.5, 2.5

void bm_inverse_gaussian_draw(benchmark::State& state) {
  RngStream rng(3, 0);
  for (auto _ : state)
    benchmark::DoNotOptimize(sample_inverse_gaussian(rng, 0.7, 1.0));
}
BENCHMARK(bm_inverse_gaussian_draw);

void bm_gig_draw(benchmark::State& state) {
  RngStream rng(4, 0);
  GigParams p;
  p.chi = state.range(0) / 10.0;
  p.rho = 2.0;
  p.lambda = state.range(1) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_gig(rng, p));
}
BENCHMARK(bm_gig_draw)
    ->Args({1, -45})   // small chi, negative order
    ->Args({10, 50})   // moderate chi, positive order
    ->Args({200, 50});  // large chi

void bm_log_bessel_k(benchmark::State& state) {
  double nu = state.range(0) / 100.0;
  double x = state.range(1) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(log_bessel_k(nu, x));
}
BENCHMARK(bm_log_bessel_k)->Args({25, 10})->Args({25, 500})->Args({450, 80});

// one coefficient-vector draw on an n x p problem via the requested route
void bm_coefficient_draw(benchmark::State& state) {
  const int n = int(state.range(0));
  const int p = int(state.range(1));
  const bool direct = state.range(2) == 1;
  RngStream rng(5, 0);
  MatrixXd x(n, p);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < p; ++j) x(i, j) = rng.normal();
  VectorXd y(n);
  for (int i = 0; i < n; ++i) y[i] = rng.normal();
  DesignCache cache(x, y, direct ? BetaRoute::direct : BetaRoute::woodbury);
  VectorXd scales = VectorXd::Constant(p, 0.5);
  for (auto _ : state) {
    VectorXd beta = sample_coefficients(cache, scales, 1.0, rng);
    benchmark::DoNotOptimize(beta.data());
  }
}
BENCHMARK(bm_coefficient_draw)
    ->Args({100, 50, 1})    // tall problem, direct solve
    ->Args({100, 50, 0})    // tall problem, observation-space solve
    ->Args({60, 500, 1})    // wide problem, direct solve
    ->Args({60, 500, 0})    // wide problem, observation-space solve
    ->Args({60, 2000, 0});  // very wide, observation-space solve

// cost of a full sweep, amortized over a short chain
void bm_full_sweep(benchmark::State& state) {
  const int n = 60;
  const int p = int(state.range(0));
  RngStream rng(6, 0);
  MatrixXd x(n, p);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < p; ++j) x(i, j) = rng.normal();
  VectorXd y(n);
  for (int i = 0; i < n; ++i) y[i] = rng.normal();

  PriorSpec prior;
  switch (state.range(1)) {
    case 0: prior = default_r2d2(R2d2Default::half_half, p, n); break;
    case 1: prior = DlParams{0.5}; break;
    case 2: prior = HsParams{}; break;
    default: prior = HsPlusParams{}; break;
  }
  McmcConfig mc;
  const int sweeps = 50;
  mc.iterations = sweeps;
  mc.burnin = 0;
  mc.thin = 1;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    PosteriorDraws draws =
        run_chain(prior, SigmaPrior{}, x, y, mc, seed++, 0);
    benchmark::DoNotOptimize(draws.beta.data());
  }
  state.SetItemsProcessed(state.iterations() * sweeps);
}
BENCHMARK(bm_full_sweep)
    ->Args({100, 0})
    ->Args({100, 1})
    ->Args({100, 2})
    ->Args({100, 3})
    ->Args({500, 0})
    ->ArgNames({"p", "prior"})
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
