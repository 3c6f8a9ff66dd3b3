// Serial reference build vs the OpenMP layer kernels, and serial vs parallel
// Monte Carlo evaluation.

#include <benchmark/benchmark.h>

#include "lsopt/sim.hpp"

namespace {

std::shared_ptr<const lsopt::Model> brownian_model(int m, int n) {
  const auto prior = lsopt::PriorModel::brownian();
  return lsopt::make_model(
      {prior, lsopt::Grid::with_default_range(0.0, 1.0, m, 0.0, n, prior), lsopt::RewardSpec::indicator(0.0)});
}

void BM_TableReference(benchmark::State& state) {
  const auto model = brownian_model(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) {
    auto t = lsopt::reference::build_table_serial(model, 0.05);
    benchmark::DoNotOptimize(t.values.data());
  }
}

void BM_TableKernelSerial(benchmark::State& state) {
  const auto model = brownian_model(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) {
    auto t = lsopt::build_table(model, 0.05, lsopt::Execution::Serial);
    benchmark::DoNotOptimize(t.values.data());
  }
}

void BM_TableKernelParallel(benchmark::State& state) {
  const auto model = brownian_model(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) {
    auto t = lsopt::build_table(model, 0.05, lsopt::Execution::Parallel);
    benchmark::DoNotOptimize(t.values.data());
  }
}

void BM_Evaluate(benchmark::State& state) {
  const auto model = brownian_model(50, 41);
  const lsopt::Setup setup{model, lsopt::ObservationHistory(0.0, 1.0, 0.0, 0.0)};
  auto table = std::make_shared<const lsopt::ValueTable>(lsopt::build_table(model, 0.05));
  const auto exec = state.range(0) ? lsopt::Execution::Parallel : lsopt::Execution::Serial;
  for (auto _ : state) {
    auto r = lsopt::evaluate(lsopt::OptimalPolicy{table}, setup, 0.05, 5000, 7, exec);
    benchmark::DoNotOptimize(r.mean_performance);
  }
}

}  // namespace

BENCHMARK(BM_TableReference)->Args({30, 31})->Args({50, 41})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TableKernelSerial)->Args({30, 31})->Args({50, 41})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TableKernelParallel)->Args({30, 31})->Args({50, 41})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Evaluate)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
