// Serial reference vs OpenMP for the three parallel kernels.
#include <benchmark/benchmark.h>

#include <random>

#include "dsq/ds_frontend.hpp"
#include "dsq/orbit_solver.hpp"
#include "dsq/quiver.hpp"
#include "dsq/rep_lab.hpp"

using namespace dsq;

namespace {

OrbitProblem five_point_problem() {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(0.5, 2.0);
  DSInstance inst;
  for (int i = 0; i < 5; ++i) {
    const Complex a(u(gen), u(gen) - 1.25);
    inst.classes.push_back({{{a, 1, std::nullopt}, {-a, 1, std::nullopt}}});
  }
  return OrbitProblem::from_instance(inst);
}

SolverOptions solver_opts(int starts) {
  SolverOptions o;
  o.starts = starts;
  o.seed = 11;
  return o;
}

void BM_solve_serial(benchmark::State& state) {
  const OrbitProblem p = five_point_problem();
  const SolverOptions o = solver_opts(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_serial(p, o).residual);
}

void BM_solve_parallel(benchmark::State& state) {
  const OrbitProblem p = five_point_problem();
  const SolverOptions o = solver_opts(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve(p, o).residual);
}

const StarShape kCensusShape{{2, 2, 2, 2}};
const DimVector kCensusAlpha{{2, 1, 1, 1, 1}};

void BM_census_serial(benchmark::State& state) {
  const Quiver q = build_star(kCensusShape);
  const auto samples = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(parameter_census_serial(q, kCensusAlpha, samples, 3).samples);
}

void BM_census_parallel(benchmark::State& state) {
  const Quiver q = build_star(kCensusShape);
  const auto samples = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(parameter_census(q, kCensusAlpha, samples, 3).samples);
}

void BM_sweep_serial(benchmark::State& state) {
  const auto cases = inequality_302_cases(5, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sweep_inequality_302_serial(cases, state.range(0)).cases);
}

void BM_sweep_parallel(benchmark::State& state) {
  const auto cases = inequality_302_cases(5, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sweep_inequality_302(cases, state.range(0)).cases);
}

}  // namespace

BENCHMARK(BM_solve_serial)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_solve_parallel)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_census_serial)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_census_parallel)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sweep_serial)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sweep_parallel)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
