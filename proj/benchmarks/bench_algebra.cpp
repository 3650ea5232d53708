#include <benchmark/benchmark.h>

#include "regmaps/group_maps.hpp"
#include "regmaps/sphere_maps.hpp"

using namespace regmaps;

static void BM_NormIdentity(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto t = oplus_norm_terms(n);
    benchmark::DoNotOptimize(normal_form(t.lhs_minus_rhs(), t.blocks).is_zero());
  }
}
BENCHMARK(BM_NormIdentity)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

static void BM_ComposeOplus(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(oplus_composed(n));
}
BENCHMARK(BM_ComposeOplus)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

static void BM_ComposeRetract(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(retract_so(n));
}
BENCHMARK(BM_ComposeRetract)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

static void BM_NormalForm(benchmark::State& state) {
  auto f = oplus(static_cast<std::size_t>(state.range(0)));
  auto p = f.denominator() * f.denominator() * f.denominator();
  for (auto _ : state) benchmark::DoNotOptimize(normal_form(p, f.domain()->sphere_blocks()));
}
BENCHMARK(BM_NormalForm)->DenseRange(1, 3)->Unit(benchmark::kMicrosecond);

static void BM_ExactEvaluate(benchmark::State& state) {
  auto f = chain_retract(static_cast<std::size_t>(state.range(0)), 2).base();
  auto g = sample_point(f.domain(), 1).coordinates();
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_coordinates(f, g));
}
BENCHMARK(BM_ExactEvaluate)->DenseRange(3, 4)->Unit(benchmark::kMicrosecond);

static void BM_CayleySample(benchmark::State& state) {
  auto so = special_orthogonal(static_cast<std::size_t>(state.range(0)));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_point(so, seed++));
}
BENCHMARK(BM_CayleySample)->DenseRange(2, 6, 2)->Unit(benchmark::kMicrosecond);
