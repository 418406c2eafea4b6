#include <benchmark/benchmark.h>

#include "interp/decomposition.hpp"
#include "interp/delta.hpp"
#include "interp/marking.hpp"
#include "interp/region.hpp"
#include "interp/slope.hpp"

using namespace interp;

static void BM_Enumerate(benchmark::State& state) {
  Surface s(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_decompositions(s));
}
BENCHMARK(BM_Enumerate)->Args({1, 2})->Args({0, 7})->Args({2, 2})->Args({3, 0})->Unit(benchmark::kMillisecond);

static void BM_FareyDistance(benchmark::State& state) {
  std::int64_t a = 1, b = 1;
  for (int i = 0; i < state.range(0); ++i) {
    auto c = a + b;
    a = b;
    b = c;
  }
  Slope x(a, b), y(-b, a + b);
  for (auto _ : state) benchmark::DoNotOptimize(farey_distance(x, y));
}
BENCHMARK(BM_FareyDistance)->Arg(5)->Arg(20)->Arg(60);

static void BM_MarkingDistance(benchmark::State& state) {
  Marking11 a(Slope(0, 1), Slope::infinity());
  Marking11 b = a;
  for (int i = 0; i < state.range(0); ++i) b = marking_moves(b)[i % 3 == 2 ? 2 : 0];
  for (auto _ : state) benchmark::DoNotOptimize(marking_distance(a, b));
}
BENCHMARK(BM_MarkingDistance)->Arg(6)->Arg(12);

static void BM_DeltaFareyBall(benchmark::State& state) {
  const auto h = state.range(0);
  NeighborFn fn = [h](const std::string& key) {
    std::vector<std::string> out;
    for (const auto& s : farey_neighbors(Slope::parse(key), h)) out.push_back(s.to_string());
    return out;
  };
  auto g = ball(fn, "0/1", 3);
  state.counters["vertices"] = static_cast<double>(g.size());
  for (auto _ : state) benchmark::DoNotOptimize(estimate_delta(g));
}
BENCHMARK(BM_DeltaFareyBall)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_RegionBall(benchmark::State& state) {
  auto r = make_region({BlockKind::Torus1, BlockKind::Annulus, BlockKind::Torus1}, -2);
  for (auto _ : state) benchmark::DoNotOptimize(region_ball(r, base_point(r), static_cast<int>(state.range(0))));
}
BENCHMARK(BM_RegionBall)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
