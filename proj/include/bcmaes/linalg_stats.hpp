#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace bcmaes {

using Vec = Eigen::VectorXd;
/// Dense symmetric matrix. Symmetry is checked at the operations that need it.
using SymMatrix = Eigen::MatrixXd;
/// Lower-triangular Cholesky factor.
using LowerTriangular = Eigen::MatrixXd;

/// Seedable random stream used for all sampling.
///
/// Uniform bits come from std::mt19937_64, whose output sequence is fixed by
/// the C++ standard for a given seed. Uniforms on (0,1) take the top 53 bits.
/// Standard normals use the Marsaglia polar method: each accepted (u, v) pair
/// yields two variates, the first returned at once and the second cached for
/// the next call. This scheme is frozen; changing it invalidates every stored
/// trace.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double normal();

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
  std::optional<double> spare_;
};

/// Relative tolerance used by the symmetry precondition.
inline constexpr double kSymmetryTolerance = 1e-12;
/// Default first diagonal jitter for spd_repair.
inline constexpr double kRepairEpsilon = 1e-10;
/// Number of tenfold jitter escalations before spd_repair gives up.
inline constexpr int kRepairEscalations = 12;

bool is_symmetric(const SymMatrix& m, double rel_tol = kSymmetryTolerance);

/// Throws NotPositiveDefinite when a pivot is not strictly positive and
/// NotSymmetric when `m` is not symmetric.
LowerTriangular cholesky(const SymMatrix& m);

/// Smallest `m + delta*I`, delta in {0, eps, 10 eps, ...}, that factorizes.
/// Throws RepairFailed after kRepairEscalations escalations.
SymMatrix spd_repair(const SymMatrix& m, double eps = kRepairEpsilon);

/// Draws k points `mean + L z`. Variates are consumed point by point, and
/// within a point coordinate by coordinate, so exactly k*d normals are used.
std::vector<Vec> sample_mvn(const Vec& mean, const SymMatrix& cov, std::size_t k, Rng& rng);
std::vector<Vec> sample_mvn_factored(const Vec& mean, const LowerTriangular& chol, std::size_t k,
                                     Rng& rng);

/// Log of the multivariate normal density at x.
double mvn_log_pdf(const Vec& mean, const SymMatrix& cov, const Vec& x);
double mvn_pdf(const Vec& mean, const SymMatrix& cov, const Vec& x);

/// Density evaluation against a precomputed factor; used by the batch kernels.
double mvn_log_pdf_factored(const Vec& mean, const LowerTriangular& chol, const Vec& x);

}  // namespace bcmaes
