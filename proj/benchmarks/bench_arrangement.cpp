#include <benchmark/benchmark.h>

#include "tangency/charging_monotone.hpp"
#include "tangency/generators.hpp"

namespace {

using namespace tangency;

void BM_BuildArrangementComb(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto family = gen_comb(n, n, std::min(n, 8), 1);
  for (auto _ : state) benchmark::DoNotOptimize(build_arrangement(family));
}
BENCHMARK(BM_BuildArrangementComb)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_BuildArrangementPolylines(benchmark::State& state) {
  const auto family = gen_random_polylines(12, static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(build_arrangement(family));
}
BENCHMARK(BM_BuildArrangementPolylines)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_BruteForceOracle(benchmark::State& state) {
  const auto family = gen_random_polylines(12, static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_intersections(family));
}
BENCHMARK(BM_BruteForceOracle)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_BuildGraphMonotone(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Arrangement arr = build_arrangement(gen_comb(n, n, 8, 1));
  const ChargingParams params = make_params(arr, 2);
  for (auto _ : state) benchmark::DoNotOptimize(build_graph(arr, params));
}
BENCHMARK(BM_BuildGraphMonotone)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_MonotoneAudits(benchmark::State& state) {
  const Arrangement arr = build_arrangement(gen_comb(16, 16, 8, 1));
  const ChargingGraph graph = build_graph(arr, make_params(arr, 2));
  for (auto _ : state) benchmark::DoNotOptimize(run_monotone_audits(graph, arr));
}
BENCHMARK(BM_MonotoneAudits)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
