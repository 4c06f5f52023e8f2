#include "bcmaes/kernels.hpp"

#include <cmath>
#include <cstdint>
#include <limits>

namespace bcmaes {
namespace {

inline double sanitize(double f) {
  return std::isnan(f) ? std::numeric_limits<double>::infinity() : f;
}

}  // namespace

bool openmp_enabled() {
#ifdef BCMAES_HAVE_OPENMP
  return true;
#else
  return false;
#endif
}

namespace serial {

std::vector<double> evaluate_population(std::span<const Vec> points, const Objective& objective) {
  std::vector<double> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) out[i] = sanitize(objective(points[i]));
  return out;
}

std::vector<double> mvn_densities(const Vec& mean, const LowerTriangular& chol,
                                  std::span<const Vec> points) {
  std::vector<double> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    out[i] = std::exp(mvn_log_pdf_factored(mean, chol, points[i]));
  }
  return out;
}

}  // namespace serial

namespace parallel {

std::vector<double> evaluate_population(std::span<const Vec> points, const Objective& objective) {
  std::vector<double> out(points.size());
  const auto n = static_cast<std::int64_t>(points.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto u = static_cast<std::size_t>(i);
    out[u] = sanitize(objective(points[u]));
  }
  return out;
}

std::vector<double> mvn_densities(const Vec& mean, const LowerTriangular& chol,
                                  std::span<const Vec> points) {
  std::vector<double> out(points.size());
  const auto n = static_cast<std::int64_t>(points.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto u = static_cast<std::size_t>(i);
    out[u] = std::exp(mvn_log_pdf_factored(mean, chol, points[u]));
  }
  return out;
}

}  // namespace parallel

std::vector<double> evaluate_population(std::span<const Vec> points, const Objective& objective,
                                        ExecutionMode mode) {
  return mode == ExecutionMode::Parallel ? parallel::evaluate_population(points, objective)
                                         : serial::evaluate_population(points, objective);
}

std::vector<double> mvn_densities(const Vec& mean, const LowerTriangular& chol,
                                  std::span<const Vec> points, ExecutionMode mode) {
  return mode == ExecutionMode::Parallel ? parallel::mvn_densities(mean, chol, points)
                                         : serial::mvn_densities(mean, chol, points);
}

}  // namespace bcmaes
