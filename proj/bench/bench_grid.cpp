#include <benchmark/benchmark.h>

#include "stirling/grid.hpp"
#include "stirling/verify.hpp"

using namespace stirling;

namespace {

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void BM_SigmaGrid(benchmark::State& state) {
  const auto xs = abscissae({1e-2, 1e3, 200, GridScale::log});
  const EvalConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_sigma_grid(xs, cfg, mode(state)));
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
  state.SetItemsProcessed(state.iterations() * static_cast<long>(xs.size()));
}

void BM_CompleteMonotonicity(benchmark::State& state) {
  const GridSpec grid{0.5, 50, 20, GridScale::log};
  const EvalConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(check_complete_monotonicity(grid, 8, cfg, mode(state)));
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}

}  // namespace

BENCHMARK(BM_SigmaGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CompleteMonotonicity)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
