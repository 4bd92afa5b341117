#include <benchmark/benchmark.h>

#include "lshsel/geometry.hpp"
#include "lshsel/random.hpp"

namespace {

void BM_CoverageVolume(benchmark::State& state) {
  const lshsel::CoverageSpec spec(static_cast<int>(state.range(0)), 1, static_cast<int>(state.range(1)));
  lshsel::RandomStream rng(7);
  const auto cells = lshsel::sample_cell_set(rng, spec);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lshsel::coverage_volume(cells, 1));
  }
}
BENCHMARK(BM_CoverageVolume)->ArgsProduct({{1, 2, 4, 8}, {1, 3, 8}});

}  // namespace
