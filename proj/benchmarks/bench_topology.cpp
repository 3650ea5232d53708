#include <benchmark/benchmark.h>

#include "regmaps/sphere_maps.hpp"
#include "regmaps/topology.hpp"

using namespace regmaps;

static void BM_Winding(benchmark::State& state) {
  auto f = circle_power(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(winding(f));
}
BENCHMARK(BM_Winding)->Arg(2)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_DegreeMC(benchmark::State& state) {
  auto f = phi_double(3);
  const auto samples = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(degree_mc(f, samples, 0, 1));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * samples));
}
BENCHMARK(BM_DegreeMC)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
