// Serial reference versus OpenMP kernels.

#include <benchmark/benchmark.h>

#include <vector>

#include "siegelkit/metrics.hpp"
#include "siegelkit/sampling.hpp"
#include "siegelkit/theta.hpp"

namespace {

using namespace siegelkit;

void BM_GramMatrix(benchmark::State& state) {
  const int g = static_cast<int>(state.range(0));
  const auto exec = state.range(1) ? Execution::Parallel : Execution::Serial;
  Rng rng(7);
  const SiegelPoint tau = random_siegel_point(g, rng);
  const QuadratureGrid grid(g, default_quadrature_n(g));
  for (auto _ : state) benchmark::DoNotOptimize(gram_matrix(tau, grid, exec));
  state.SetLabel(exec == Execution::Parallel ? "parallel" : "serial");
}
BENCHMARK(BM_GramMatrix)->Args({1, 0})->Args({1, 1})->Args({2, 0})->Args({2, 1})->Unit(benchmark::kMillisecond);

void BM_ThetaBatch(benchmark::State& state) {
  const int g = static_cast<int>(state.range(0));
  const auto exec = state.range(1) ? Execution::Parallel : Execution::Serial;
  Rng rng(11);
  const SiegelPoint tau = random_siegel_point(g, rng);
  const ThetaSeries series(ThetaCharacteristic::zero(g), tau);
  std::vector<CVector> zs;
  for (int i = 0; i < 4096; ++i) zs.push_back(random_z_in_cell(tau, rng));
  for (auto _ : state) benchmark::DoNotOptimize(theta_eval_batch(series, zs, exec));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(zs.size()));
  state.SetLabel(exec == Execution::Parallel ? "parallel" : "serial");
}
BENCHMARK(BM_ThetaBatch)->Args({1, 0})->Args({1, 1})->Args({3, 0})->Args({3, 1})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
