#include <benchmark/benchmark.h>

#include "bcmaes/kernels.hpp"

namespace {

using namespace bcmaes;

std::vector<Vec> population(std::size_t n, Eigen::Index d) {
  Rng rng(17);
  std::vector<Vec> pts(n, Vec(d));
  for (auto& p : pts)
    for (Eigen::Index i = 0; i < d; ++i) p(i) = 10.0 * rng.normal();
  return pts;
}

// A deliberately heavier objective so thread fan-out has something to amortize.
double costly_rastrigin(const Vec& x) {
  double acc = 0.0;
  for (int rep = 0; rep < 50; ++rep) acc += rastrigin(x + Vec::Constant(x.size(), 1e-3 * rep));
  return acc;
}

template <ExecutionMode Mode>
void BM_EvaluatePopulation(benchmark::State& state) {
  const auto pts = population(static_cast<std::size_t>(state.range(0)), 20);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_population(pts, costly_rastrigin, Mode));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <ExecutionMode Mode>
void BM_MvnDensities(benchmark::State& state) {
  const Eigen::Index d = 20;
  const auto pts = population(static_cast<std::size_t>(state.range(0)), d);
  Eigen::MatrixXd a = Eigen::MatrixXd::Random(d, d);
  const LowerTriangular l = cholesky(a * a.transpose() + Eigen::MatrixXd::Identity(d, d));
  const Vec mean = Vec::Zero(d);
  for (auto _ : state) benchmark::DoNotOptimize(mvn_densities(mean, l, pts, Mode));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

BENCHMARK(BM_EvaluatePopulation<ExecutionMode::Serial>)->RangeMultiplier(4)->Range(16, 4096);
BENCHMARK(BM_EvaluatePopulation<ExecutionMode::Parallel>)->RangeMultiplier(4)->Range(16, 4096);
BENCHMARK(BM_MvnDensities<ExecutionMode::Serial>)->RangeMultiplier(4)->Range(16, 4096);
BENCHMARK(BM_MvnDensities<ExecutionMode::Parallel>)->RangeMultiplier(4)->Range(16, 4096);

}  // namespace

BENCHMARK_MAIN();
