#include <benchmark/benchmark.h>

#include "lshsel/simulator.hpp"

namespace {

void BM_Estimate(benchmark::State& state) {
  const lshsel::CoverageSpec spec(static_cast<int>(state.range(0)), 1, static_cast<int>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(lshsel::simulator::estimate(spec, 100'000, 11).mean);
  }
  state.SetItemsProcessed(state.iterations() * 100'000);
}
BENCHMARK(BM_Estimate)->Args({1, 1})->Args({3, 2})->Args({4, 4})->Unit(benchmark::kMillisecond);

}  // namespace
