// Serial reference against the OpenMP kernels. Outputs are bit-identical under
// both policies, so only the timings differ.
#include <benchmark/benchmark.h>

#include "conelab/experiments.hpp"
#include "conelab/kinematics.hpp"
#include "conelab/statdim.hpp"

using namespace conelab;

namespace {

Exec policy(const benchmark::State& st) { return st.range(0) == 0 ? Exec::serial : Exec::parallel; }

void label(benchmark::State& st) { st.SetLabel(st.range(0) == 0 ? "serial" : "parallel"); }

void BM_MonteCarloPsd(benchmark::State& st) {
  const ConeSpec cone = ConeSpec::psd(12);
  for (auto _ : st)
    benchmark::DoNotOptimize(statdim_monte_carlo(cone, 20000, RngStream(3), policy(st)).value);
  label(st);
}

void BM_MonteCarloCircular(benchmark::State& st) {
  const ConeSpec cone = ConeSpec::circular(128, 0.7);
  for (auto _ : st)
    benchmark::DoNotOptimize(statdim_monte_carlo(cone, 100000, RngStream(3), policy(st)).value);
  label(st);
}

void BM_RecipeL1(benchmark::State& st) {
  const auto model = SubdifferentialModel::l1(20, 100);
  for (auto _ : st)
    benchmark::DoNotOptimize(recipe_statdim(model, 50000, RngStream(5), policy(st)).F_min);
  label(st);
}

void BM_RecipeS1(benchmark::State& st) {
  const auto model = SubdifferentialModel::s1(3, 20, 20);
  for (auto _ : st)
    benchmark::DoNotOptimize(recipe_statdim(model, 2000, RngStream(5), policy(st)).F_min);
  label(st);
}

void BM_SteinerSampler(benchmark::State& st) {
  const ConeSpec cone = ConeSpec::circular(64, 0.5);
  for (auto _ : st)
    benchmark::DoNotOptimize(steiner_lhs_mc(cone, 0.3, 100000, RngStream(9), policy(st)).mean());
  label(st);
}

void BM_L1Grid(benchmark::State& st) {
  ExperimentConfig c = default_config(Experiment::l1_grid);
  c.d = 24;
  c.reps = 4;
  c.keys = {2, 12, 2};
  c.abscissas = {4, 24, 2};
  for (auto _ : st) benchmark::DoNotOptimize(run_l1_grid(c, policy(st)).cells.size());
  label(st);
}

}  // namespace

BENCHMARK(BM_MonteCarloPsd)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarloCircular)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RecipeL1)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RecipeS1)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SteinerSampler)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_L1Grid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
