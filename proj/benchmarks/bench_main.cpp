#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "nlcn/manufactured.hpp"
#include "nlcn/stepper.hpp"

using namespace nlcn;

namespace {

SpacePtr square_space(const benchmark::State& state) {
  return build_lagrange_space(uniform_square_mesh(static_cast<int>(state.range(0))), static_cast<int>(state.range(1)));
}

}  // namespace

static void BM_AssembleMassStiffness2D(benchmark::State& state) {
  const auto s = square_space(state);
  for (auto _ : state) benchmark::DoNotOptimize(StepOperators::assemble(*s));
  state.SetLabel(std::to_string(s->n_nodes()) + " nodes");
}
BENCHMARK(BM_AssembleMassStiffness2D)->Args({16, 1})->Args({16, 3})->Args({32, 2})->Unit(benchmark::kMillisecond);

static void BM_StepSolve(benchmark::State& state) {
  const auto s = square_space(state);
  const auto ops = StepOperators::assemble(*s);
  const auto A = SparseSymMatrix::combine(100.0, ops.mass, 0.5, ops.stiffness);
  const auto b = assemble_load(s, [](const Point& p, double) { return std::sin(std::numbers::pi * p[0]); }, 0.0);
  SolveStats stats;
  for (auto _ : state) benchmark::DoNotOptimize(solve_spd(A, b, {}, &stats));
  state.counters["cg_iterations"] = static_cast<double>(stats.iterations);
}
BENCHMARK(BM_StepSolve)->Args({16, 3})->Args({32, 2})->Args({64, 1})->Unit(benchmark::kMillisecond);

static void BM_BandedVsCg1D(benchmark::State& state) {
  const auto s = build_lagrange_space(uniform_interval_mesh(0, 1, 1000), 2);
  const auto ops = StepOperators::assemble(*s);
  const auto A = SparseSymMatrix::combine(1000.0, ops.mass, 0.5, ops.stiffness);
  const auto b = assemble_load(s, [](const Point& p, double) { return p[0]; }, 0.0);
  SolverConfig cfg;
  cfg.method = state.range(0) ? SolverMethod::DirectBanded : SolverMethod::ConjugateGradient;
  for (auto _ : state) benchmark::DoNotOptimize(solve_spd(A, b, cfg));
  state.SetLabel(std::string(to_string(cfg.method)));
}
BENCHMARK(BM_BandedVsCg1D)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

static void BM_ExampleThreeRun(benchmark::State& state) {
  const auto c = make_case(CaseId::Example3);
  const auto s = build_lagrange_space(uniform_square_mesh(8), 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(run(s, Problem{NonlocalCoefficient{c.gamma}, c.u0, c.f}, TimeGrid(1.0, 100)));
}
BENCHMARK(BM_ExampleThreeRun)->Unit(benchmark::kMillisecond);

static void BM_SolveAlpha(benchmark::State& state) {
  const auto id = static_cast<CaseId>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_alpha(alpha_map(id), default_alpha_config(id)));
}
BENCHMARK(BM_SolveAlpha)->DenseRange(0, 2)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
