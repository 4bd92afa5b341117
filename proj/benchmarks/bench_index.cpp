#include <benchmark/benchmark.h>

#include <vector>

#include "lshsel/grid_index.hpp"

namespace {

using namespace lshsel::index;

void BM_IndexBuild(benchmark::State& state) {
  const auto data = generate_dataset(static_cast<std::size_t>(state.range(0)), 2, 10, 3);
  for (auto _ : state) {
    auto idx = build(data, 2, 5);
    benchmark::DoNotOptimize(idx);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_IndexBuild)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);

void BM_IndexQuery(benchmark::State& state) {
  const auto data = generate_dataset(100'000, 2, 10, 3);
  const auto idx = build(data, static_cast<int>(state.range(0)), 5);
  std::vector<double> q{4.3, 7.9};
  for (auto _ : state) {
    benchmark::DoNotOptimize(query_candidates(idx, q));
  }
}
BENCHMARK(BM_IndexQuery)->Arg(1)->Arg(2)->Arg(4);

}  // namespace
