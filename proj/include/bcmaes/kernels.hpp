#pragma once

#include <span>
#include <vector>

#include "bcmaes/benchmarks.hpp"
#include "bcmaes/linalg_stats.hpp"

namespace bcmaes {

/// Serial keeps the reference loops; Parallel fans out over OpenMP threads
/// (falls back to the serial loop when built without OpenMP).
enum class ExecutionMode { Serial, Parallel };

bool openmp_enabled();

namespace serial {

/// fitness[i] = objective(points[i]), NaN mapped to +inf.
std::vector<double> evaluate_population(std::span<const Vec> points, const Objective& objective);

/// densities[i] = N(mean, L L^T)(points[i]).
std::vector<double> mvn_densities(const Vec& mean, const LowerTriangular& chol,
                                  std::span<const Vec> points);

}  // namespace serial

namespace parallel {

/// Same contract as serial::evaluate_population. The objective must be safe
/// to call concurrently. Output order and values equal the serial kernel.
std::vector<double> evaluate_population(std::span<const Vec> points, const Objective& objective);

std::vector<double> mvn_densities(const Vec& mean, const LowerTriangular& chol,
                                  std::span<const Vec> points);

}  // namespace parallel

std::vector<double> evaluate_population(std::span<const Vec> points, const Objective& objective,
                                        ExecutionMode mode = ExecutionMode::Serial);

std::vector<double> mvn_densities(const Vec& mean, const LowerTriangular& chol,
                                  std::span<const Vec> points,
                                  ExecutionMode mode = ExecutionMode::Serial);

}  // namespace bcmaes
