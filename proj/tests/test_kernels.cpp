#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "bcmaes/kernels.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace bcmaes {
namespace {

std::vector<Vec> random_points(std::size_t n, std::size_t d, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<Vec> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(testutil::to_eigen(testutil::random_vec(d, gen, -10, 10)));
  return out;
}

TEST(EvaluatePopulation, ConeExample) {
  const std::vector<Vec> pts{Vec::Zero(2), (Vec(2) << 3, 4).finished()};
  for (auto mode : {ExecutionMode::Serial, ExecutionMode::Parallel}) {
    const auto f = evaluate_population(pts, cone, mode);
    ASSERT_EQ(f.size(), 2u);
    EXPECT_EQ(f[0], 0.0);
    EXPECT_DOUBLE_EQ(f[1], 5.0);
  }
}

TEST(EvaluatePopulation, NaNBecomesInfinity) {
  const Objective bad = [](const Vec& x) { return x(0) > 0 ? std::nan("") : x(0); };
  const std::vector<Vec> pts{Vec::Constant(1, -2.0), Vec::Constant(1, 2.0)};
  for (auto mode : {ExecutionMode::Serial, ExecutionMode::Parallel}) {
    const auto f = evaluate_population(pts, bad, mode);
    EXPECT_EQ(f[0], -2.0);
    EXPECT_EQ(f[1], std::numeric_limits<double>::infinity());
  }
}

TEST(EvaluatePopulation, ParallelMatchesSerialExactly) {
  const auto pts = random_points(64, 5, 61);
  for (const auto& name : benchmark_names()) {
    const Benchmark b = registry_lookup(name, 5);
    EXPECT_EQ(serial::evaluate_population(pts, b.evaluate), parallel::evaluate_population(pts, b.evaluate)) << name;
  }
}

TEST(MvnDensities, ParallelMatchesSerialAndOracle) {
  std::mt19937_64 gen(62);
  for (std::size_t d : {1u, 2u, 5u}) {
    const auto cov = oracle::random_spd(d, gen);
    const auto mean = testutil::random_vec(d, gen);
    const auto pts = random_points(64, d, 63 + d);
    const LowerTriangular l = cholesky(testutil::to_eigen(cov));
    const auto s = serial::mvn_densities(testutil::to_eigen(mean), l, pts);
    const auto p = parallel::mvn_densities(testutil::to_eigen(mean), l, pts);
    EXPECT_EQ(s, p);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double want = oracle::mvn_pdf(mean, cov, testutil::to_std(pts[i]));
      if (want > 1e-250) EXPECT_NEAR(s[i] / want, 1.0, 1e-9);
    }
  }
}

TEST(Kernels, OpenMpFlagIsConsistent) {
#ifdef BCMAES_HAVE_OPENMP
  EXPECT_TRUE(openmp_enabled());
#else
  EXPECT_FALSE(openmp_enabled());
#endif
}

}  // namespace
}  // namespace bcmaes
