#include <benchmark/benchmark.h>

#include <cstdint>

#include "potlab/brownian.hpp"
#include "potlab/harmonic.hpp"
#include "potlab/martingale.hpp"
#include "potlab/rng.hpp"

using namespace potlab;

static void BM_DiscretizedExit(benchmark::State& state) {
  PathConfig cfg;
  cfg.m = 2;
  cfg.dt = 1.0 / static_cast<double>(state.range(0));
  std::uint64_t i = 0;
  for (auto _ : state) {
    cfg.stream_id = i++;
    benchmark::DoNotOptimize(simulate_exit(cfg, Point{0, 0}, 1.0, false));
  }
}
BENCHMARK(BM_DiscretizedExit)->Arg(1000)->Arg(10000);

static void BM_WalkOnSpheres(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  Point x(m);
  x[0] = 0.5;
  RngStream stream(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(wos_exit_point(stream, x, 1.0));
}
BENCHMARK(BM_WalkOnSpheres)->Arg(2)->Arg(3)->Arg(8);

static void BM_HardyIntegrals(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const HarmonicFn u = catalog_member(m, "x1");
  const SurfaceQuadrature quad = member_quadrature(u);
  for (auto _ : state) benchmark::DoNotOptimize(hardy_integrals(u, 0.9, quad));
}
BENCHMARK(BM_HardyIntegrals)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_LambdaBar(benchmark::State& state) {
  const double v = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lambda_bar(v));
}
BENCHMARK(BM_LambdaBar)->Arg(2)->Arg(100)->Arg(10000)->Arg(100000);

BENCHMARK_MAIN();
