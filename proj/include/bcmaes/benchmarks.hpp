#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "bcmaes/linalg_stats.hpp"

namespace bcmaes {

using Objective = std::function<double(const Vec&)>;

// Test functions, defined for any dimension.

/// Euclidean norm.
double cone(const Vec& x);
/// sum |x_i| + prod |x_i|
double schwefel2(const Vec& x);
/// 10 d + sum (x_i^2 - 10 cos(2 pi x_i))
double rastrigin(const Vec& x);
/// 418.9829 d - sum g(x_i), with g(x) = x sin(sqrt|x|) for |x| < 500 and
/// the constant 500 sin(sqrt 500) otherwise. Not restricted to [-500, 500]^d.
double schwefel1(const Vec& x);

inline constexpr double kSchwefel1Offset = 418.9829;
inline constexpr double kSchwefel1Minimizer = 420.9687;

struct BenchmarkSpec {
  std::string name;
  Eigen::Index dim = 0;
  double global_min_value = 0.0;
  Vec global_min_point;
  Vec default_x0;
};

struct Benchmark {
  BenchmarkSpec spec;
  Objective evaluate;
};

/// Names accepted by registry_lookup, in registry order.
const std::vector<std::string>& benchmark_names();

/// Throws UnknownFunction for names outside the registry.
Benchmark registry_lookup(std::string_view name, Eigen::Index dim);

}  // namespace bcmaes
