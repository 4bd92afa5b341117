#include <benchmark/benchmark.h>

#include "lshsel/oracle.hpp"

namespace {

using namespace lshsel::oracle;

void BM_TensorPairDifference(benchmark::State& state) {
  const auto f = Integrand::pair_difference(2);
  const auto domain = f.natural_domain();
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate_tensor(f, domain, static_cast<int>(state.range(0))).value);
  }
}
BENCHMARK(BM_TensorPairDifference)->Arg(20)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_MonteCarloCombined(benchmark::State& state) {
  const auto f = Integrand::combined(3, 3);
  const auto domain = f.natural_domain();
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate_mc(f, domain, 100'000, 9).value);
  }
}
BENCHMARK(BM_MonteCarloCombined)->Unit(benchmark::kMillisecond);

}  // namespace
