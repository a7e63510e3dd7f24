// Micro benchmarks for the hot paths: root transform, distance, closed-form
// flow, RK4 integration, LP solve, e-connection residual and brackets.

#include "simplexgeo/simplexgeo.hpp"
#include "simplexgeo/tools/checks.hpp"
#include "simplexgeo/tools/generators.hpp"

#include <benchmark/benchmark.h>

using namespace simplexgeo;
using namespace simplexgeo::tools;

namespace {

void BM_ForwardInverse(benchmark::State& state) {
  Rng rng = make_rng(1);
  const SimplexPoint p = random_simplex_point(state.range(0), rng);
  const RootTransform T(3.0);
  for (auto _ : state) benchmark::DoNotOptimize(inverse(T, forward(T, p)));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ForwardInverse)->RangeMultiplier(8)->Range(8, 4096)->Complexity();

void BM_FrDistance(benchmark::State& state) {
  Rng rng = make_rng(2);
  const SimplexPoint p = random_simplex_point(state.range(0), rng);
  const SimplexPoint r = random_simplex_point(state.range(0), rng);
  for (auto _ : state) benchmark::DoNotOptimize(fr_distance(p, r));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FrDistance)->RangeMultiplier(8)->Range(8, 4096)->Complexity();

void BM_FlowClosedForm(benchmark::State& state) {
  Rng rng = make_rng(3);
  const LinearObjective obj(random_decreasing_objective(state.range(0), rng));
  const SimplexPoint p0 = random_simplex_point(state.range(0), rng);
  for (auto _ : state) benchmark::DoNotOptimize(flow_closed_form(obj, p0, 1.7));
}
BENCHMARK(BM_FlowClosedForm)->RangeMultiplier(8)->Range(8, 4096);

void BM_IntegrateRk4(benchmark::State& state) {
  Rng rng = make_rng(4);
  const LinearObjective obj(random_decreasing_objective(16, rng));
  const SimplexPoint p0 = random_simplex_point(16, rng);
  const VectorField W = gradient_vector_field(obj);
  for (auto _ : state) benchmark::DoNotOptimize(integrate_rk4(W, p0, 1.0, 1e-3));
}
BENCHMARK(BM_IntegrateRk4)->Unit(benchmark::kMillisecond);

void BM_SolveLp(benchmark::State& state) {
  Rng rng = make_rng(5);
  const LinearObjective obj(random_decreasing_objective(state.range(0), rng));
  const SimplexPoint p0 = random_simplex_point(state.range(0), rng);
  for (auto _ : state) benchmark::DoNotOptimize(solve_lp(obj, p0, 1e-10));
}
BENCHMARK(BM_SolveLp)->Arg(8)->Arg(64)->Unit(benchmark::kMicrosecond);

void BM_EConnectionResidual(benchmark::State& state) {
  Rng rng = make_rng(6);
  const SimplexPoint p0 = random_simplex_point(state.range(0), rng);
  const EGeodesic g = make_e_geodesic(p0, random_tangent(p0, rng));
  const Curve curve = [&](double t) { return e_geodesic_eval(g, t); };
  for (auto _ : state) benchmark::DoNotOptimize(e_connection_residual(curve, 0.5));
}
BENCHMARK(BM_EConnectionResidual)->Arg(16)->Arg(256);

void BM_IntegrabilitySuite(benchmark::State& state) {
  Rng rng = make_rng(7);
  const Vector c = random_objective(state.range(0), rng);
  for (auto _ : state) benchmark::DoNotOptimize(integrability_suite(c, 4, 7));
}
BENCHMARK(BM_IntegrabilitySuite)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_RunAllChecks(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(run_all_checks(16, 7));
}
BENCHMARK(BM_RunAllChecks)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
