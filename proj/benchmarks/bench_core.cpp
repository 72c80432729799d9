#include <cmath>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "wbgp/acquisition.hpp"
#include "wbgp/bo_loop.hpp"
#include "wbgp/ensemble.hpp"
#include "wbgp/problems.hpp"

namespace {

wbgp::Dataset make_data(std::size_t n) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  wbgp::Dataset d;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = u(rng);
    d.append(x, std::sin(10.0 * x));
  }
  return d;
}

void BM_FitGp(benchmark::State& state) {
  const auto d = make_data(static_cast<std::size_t>(state.range(0)));
  const wbgp::KernelHyperparams h{0.3, 0.1, wbgp::kDefaultJitter};
  for (auto _ : state) benchmark::DoNotOptimize(wbgp::fit_gp_escalating(h, d));
}
BENCHMARK(BM_FitGp)->Arg(5)->Arg(20)->Arg(35);

void BM_MleFit(benchmark::State& state) {
  const auto d = make_data(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(wbgp::mle_fit(d));
}
BENCHMARK(BM_MleFit)->Arg(5)->Arg(35);

void BM_EnsembleRefit(benchmark::State& state) {
  const auto d = make_data(35);
  const wbgp::GPEnsemble e(
      wbgp::sample_ensemble_hyperparams(wbgp::build_pool(), static_cast<std::size_t>(state.range(0)), 3));
  for (auto _ : state) benchmark::DoNotOptimize(e.refit(d));
}
BENCHMARK(BM_EnsembleRefit)->Arg(16)->Arg(32);

void BM_EnsembleAcquisition(benchmark::State& state) {
  const auto d = make_data(35);
  const auto e = wbgp::GPEnsemble(wbgp::sample_ensemble_hyperparams(
                                      wbgp::build_pool(), static_cast<std::size_t>(state.range(0)), 3))
                     .refit(d);
  const wbgp::AcquisitionConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        wbgp::optimize_acquisition([&](std::span<const double> xs) { return e.barycenter_posterior(xs); }, cfg));
  }
}
BENCHMARK(BM_EnsembleAcquisition)->Arg(16)->Arg(32);

void BM_FullRun(benchmark::State& state) {
  const auto p = *wbgp::find_problem("14");
  wbgp::RunConfig cfg;
  cfg.algorithm = state.range(0) == 0 ? wbgp::Algorithm::kGpBo : wbgp::Algorithm::kWbgpBo;
  cfg.n_members = static_cast<std::size_t>(std::max<std::int64_t>(state.range(0), 1));
  cfg.seed = 42;
  for (auto _ : state) benchmark::DoNotOptimize(wbgp::run_bo([&](double u) { return p.rescaled_eval(u); }, cfg));
}
BENCHMARK(BM_FullRun)->Arg(0)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
