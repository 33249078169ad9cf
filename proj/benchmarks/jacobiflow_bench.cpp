#include <benchmark/benchmark.h>

#include <cmath>

#include "jacobiflow/conjugator.hpp"
#include "jacobiflow/diffeo_factory.hpp"
#include "jacobiflow/flow.hpp"
#include "jacobiflow/jacobi.hpp"

using namespace jacobiflow;

static void BM_membership_E8(benchmark::State& state) {
  const TruncSeries f = series_from_expr(parse_expr("x^3 + y^5", 2), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_membership(f));
}
BENCHMARK(BM_membership_E8)->Arg(8)->Arg(12)->Arg(16);

static void BM_flow_2d(benchmark::State& state) {
  const FlowSpec spec{parse_field("x/2 - y; y/2 + x", 2), Box::cube(2, -100, 100), {}};
  const std::vector<double> x0 = {1.0, 0.5};
  for (auto _ : state) benchmark::DoNotOptimize(integrate_flow(spec, x0, 2.0));
}
BENCHMARK(BM_flow_2d);

static void BM_shift_function(benchmark::State& state) {
  const Diffeo1D phi = Diffeo1D::from_expr(parse_expr("x + (x^3 + x^2)/4", 1), -1.5, 1.5);
  const SmoothExpr alpha = parse_expr("x^3 + x^2", 1);
  for (auto _ : state) benchmark::DoNotOptimize(shift_function(phi, alpha, -0.5, 0.5));
}
BENCHMARK(BM_shift_function);

static void BM_lift_local(benchmark::State& state) {
  LiftProblem p;
  p.f = parse_expr("x^2 + y^2", 2);
  p.field = parse_field("x/2; y/2", 2);
  p.alpha = parse_expr("x", 1);
  p.phi = Diffeo1D::from_expr(parse_expr("x + x^2/4", 1), -1, 9);
  p.box = Box::cube(2, -1, 1);
  p.grid = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lift_diffeo(p));
}
BENCHMARK(BM_lift_local)->Arg(21)->Arg(101)->Unit(benchmark::kMillisecond);

static void BM_interpolating_diffeo(benchmark::State& state) {
  for (auto _ : state) {
    const InterpolatingDiffeo phi({0.4, 1.7, 2.2, 4.9, 5.3});
    double acc = 0.0;
    for (int i = 0; i <= 60; ++i) acc += phi(0.1 * i);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_interpolating_diffeo)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
