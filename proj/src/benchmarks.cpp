#include "bcmaes/benchmarks.hpp"

#include <cmath>
#include <numbers>

#include "bcmaes/errors.hpp"

namespace bcmaes {

double cone(const Vec& x) { return x.norm(); }

double schwefel2(const Vec& x) {
  double sum = 0.0;
  double prod = 1.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double a = std::abs(x(i));
    sum += a;
    prod *= a;
  }
  return sum + prod;
}

double rastrigin(const Vec& x) {
  double acc = 10.0 * static_cast<double>(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    acc += x(i) * x(i) - 10.0 * std::cos(2.0 * std::numbers::pi * x(i));
  }
  return acc;
}

double schwefel1(const Vec& x) {
  static const double clamp_term = 500.0 * std::sin(std::sqrt(500.0));
  double acc = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double a = std::abs(x(i));
    acc += (a < 500.0) ? x(i) * std::sin(std::sqrt(a)) : clamp_term;
  }
  return kSchwefel1Offset * static_cast<double>(x.size()) - acc;
}

const std::vector<std::string>& benchmark_names() {
  static const std::vector<std::string> names{"cone", "schwefel2", "rastrigin", "schwefel1"};
  return names;
}

Benchmark registry_lookup(std::string_view name, Eigen::Index dim) {
  if (dim < 1) throw UnknownFunction("registry_lookup: dimension must be >= 1");
  Benchmark b;
  b.spec.name = std::string(name);
  b.spec.dim = dim;
  if (name == "cone" || name == "schwefel2" || name == "rastrigin") {
    b.spec.global_min_point = Vec::Zero(dim);
    b.spec.default_x0 = Vec::Constant(dim, 10.0);
    if (name == "cone") b.evaluate = cone;
    if (name == "schwefel2") b.evaluate = schwefel2;
    if (name == "rastrigin") b.evaluate = rastrigin;
  } else if (name == "schwefel1") {
    // The minimizer is known to 7 digits only; the reference value is the
    // function at that point.
    b.spec.global_min_point = Vec::Constant(dim, kSchwefel1Minimizer);
    b.spec.default_x0 = Vec::Constant(dim, 400.0);
    b.evaluate = schwefel1;
  } else {
    throw UnknownFunction("unknown function '" + std::string(name) + "'");
  }
  b.spec.global_min_value = b.evaluate(b.spec.global_min_point);
  return b;
}

}  // namespace bcmaes
