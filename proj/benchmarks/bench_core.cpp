#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "ktcy/canonical_connection.hpp"
#include "ktcy/continuity_solver.hpp"
#include "ktcy/cy_reduction.hpp"
#include "ktcy/torus_grid.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

ktcy::TorusField checker(int n) {
  return ktcy::TorusField::sample(ktcy::Grid(n), [](double x, double y) {
    return 0.5 * std::cos(2 * kPi * x) * std::cos(2 * kPi * y);
  });
}

void BM_Derivative(benchmark::State& state) {
  const auto f = checker(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ktcy::derivative(f, ktcy::Partial::xy));
}
BENCHMARK(BM_Derivative)->RangeMultiplier(2)->Range(32, 512);

void BM_Hessian(benchmark::State& state) {
  const auto f = checker(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ktcy::hessian(f));
}
BENCHMARK(BM_Hessian)->RangeMultiplier(2)->Range(32, 512);

void BM_InvertLaplacian(benchmark::State& state) {
  const auto f = checker(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ktcy::invert_laplacian(f));
}
BENCHMARK(BM_InvertLaplacian)->RangeMultiplier(2)->Range(32, 512);

void BM_KeyIdentityGap(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto phi = ktcy::Potential::projected(checker(n) * (-1.0 / (8 * kPi * kPi)));
  for (auto _ : state) benchmark::DoNotOptimize(ktcy::key_identity_gap(phi));
}
BENCHMARK(BM_KeyIdentityGap)->RangeMultiplier(2)->Range(32, 256);

void BM_NewtonStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ktcy::SolverConfig cfg;
  cfg.grid_n = n;
  const auto d = ktcy::DensityData::normalized(checker(n));
  const auto phi = ktcy::Potential::zero(ktcy::Grid(n));
  for (auto _ : state) benchmark::DoNotOptimize(ktcy::newton_step(phi, d, cfg));
}
BENCHMARK(BM_NewtonStep)->RangeMultiplier(2)->Range(32, 256)->Unit(benchmark::kMillisecond);

void BM_ContinuitySolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ktcy::SolverConfig cfg;
  cfg.grid_n = n;
  const auto F = checker(n);
  for (auto _ : state) benchmark::DoNotOptimize(ktcy::continuity_solve(F, cfg));
}
BENCHMARK(BM_ContinuitySolve)->RangeMultiplier(2)->Range(32, 128)->Unit(benchmark::kMillisecond);

void BM_Curvature(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ktcy::curvature());
}
BENCHMARK(BM_Curvature);

}  // namespace
BENCHMARK_MAIN();
