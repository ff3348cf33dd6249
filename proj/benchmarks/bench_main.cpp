#include <benchmark/benchmark.h>

#include "sdom/class_h.hpp"
#include "sdom/compound.hpp"
#include "sdom/dominance.hpp"
#include "sdom/stable.hpp"

using namespace sdom;

static void BM_ParetoDraw(benchmark::State& state) {
  const auto d = pareto(1.0);
  RngStream rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(d.draw(rng));
}
BENCHMARK(BM_ParetoDraw);

static void BM_StableDraw(benchmark::State& state) {
  const StableParams p{0.7, 1.0, 1.0, 0.0};
  RngStream rng(2);
  for (auto _ : state) benchmark::DoNotOptimize(draw_stable(p, rng));
}
BENCHMARK(BM_StableDraw);

static void BM_CompoundPoissonDraw(benchmark::State& state) {
  const CompoundPoissonSpec spec(static_cast<double>(state.range(0)), pareto(1.0));
  RngStream rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(draw_cp(spec, rng));
}
BENCHMARK(BM_CompoundPoissonDraw)->Arg(1)->Arg(50);

static void BM_NumericHCheck(benchmark::State& state) {
  const auto d = max_of(pareto(1.0), frechet(0.8));
  GridSpec grid;
  grid.points = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(numeric_h_check(d, grid));
}
BENCHMARK(BM_NumericHCheck)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_HStarCheck(benchmark::State& state) {
  const auto d = pareto(1.0);
  GridSpec grid;
  grid.points = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hstar_check(d, grid));
}
BENCHMARK(BM_HStarCheck)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_ExactTail(benchmark::State& state) {
  const auto d = pareto(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(exact_two_weight_tail(d, 0.3, 5.0));
}
BENCHMARK(BM_ExactTail)->Unit(benchmark::kMicrosecond);

static void BM_McDominance(benchmark::State& state) {
  const auto d = pareto(1.0);
  const auto n = static_cast<std::size_t>(state.range(0));
  RngStream rng(4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mc_dominance_test(d, {0.5, 0.3, 0.2}, {0.8, 0.2, 0.0}, n, 0.01, rng));
  }
}
BENCHMARK(BM_McDominance)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
