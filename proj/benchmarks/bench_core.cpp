#include <benchmark/benchmark.h>

#include "ergolab/averages.hpp"
#include "ergolab/seminorms.hpp"

using namespace ergolab;

namespace {

constexpr double kAlpha = 0.61803398874989485;

DynamicalSystem system_for(int which) {
  switch (which) {
    case 0: return make_system(SystemSpec::rotation(kAlpha));
    case 1: return make_system(SystemSpec::doubling());
    default: return make_system(SystemSpec::skew_sqrt(kAlpha));
  }
}

void BM_SampleOrbit(benchmark::State& state) {
  const auto sys = system_for(static_cast<int>(state.range(0)));
  const Observable f = sys.dimension() == 1 ? Observable::cosine(1) : parse_observable("0.5*e(1,0)+0.5*e(0,1)");
  const auto N = static_cast<std::size_t>(state.range(1));
  const Point x0 = random_point(sys, 1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(sample_observable(sys, f, x0, N));
  state.SetItemsProcessed(state.iterations() * state.range(1));
  state.SetLabel(sys.describe());
}
BENCHMARK(BM_SampleOrbit)->ArgsProduct({{0, 1, 2}, {1 << 12, 1 << 16}});

void BM_WienerWintnerSup(benchmark::State& state) {
  const auto dbl = make_system(SystemSpec::doubling());
  const auto N = static_cast<std::size_t>(state.range(1));
  const auto series = sample_observable(dbl, Observable::cosine(1), random_point(dbl, 1, 0), N);
  const FrequencyGrid grid = FrequencyGrid::for_length(N);
  const auto method = state.range(0) == 0 ? GridMethod::Fast : GridMethod::Direct;
  for (auto _ : state) benchmark::DoNotOptimize(wiener_wintner_sup(series, N, grid, method));
  state.SetLabel(state.range(0) == 0 ? "fft" : "direct");
}
BENCHMARK(BM_WienerWintnerSup)->ArgsProduct({{0}, {1 << 10, 1 << 14, 1 << 16}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WienerWintnerSup)->ArgsProduct({{1}, {1 << 8, 1 << 10}})->Unit(benchmark::kMillisecond);

void BM_HostKraSeminorm(benchmark::State& state) {
  const auto rot = make_system(SystemSpec::rotation(kAlpha));
  const Observable f = parse_observable("0.5*e(1)+0.3*e(2)-0.2*e(-3)");
  const auto policy = state.range(0) == 0 ? PathPolicy::ExactOnly : PathPolicy::QuadratureOnly;
  const int k = static_cast<int>(state.range(1));
  const auto H = static_cast<std::size_t>(state.range(2));
  for (auto _ : state)
    benchmark::DoNotOptimize(hk_seminorm(rot, f, k, H, 1 << 16, default_start(rot), policy));
  state.SetLabel(state.range(0) == 0 ? "exact" : "orbit");
}
BENCHMARK(BM_HostKraSeminorm)
    ->ArgsProduct({{0, 1}, {2}, {64, 256}})
    ->Args({0, 3, 64})
    ->Args({1, 3, 64})
    ->Args({0, 3, 256})
    ->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
