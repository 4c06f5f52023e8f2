#include "bcmaes/linalg_stats.hpp"

#include <cmath>
#include <numbers>

#include "bcmaes/errors.hpp"

namespace bcmaes {

double Rng::normal() {
  if (spare_) {
    const double out = *spare_;
    spare_.reset();
    return out;
  }
  double u = 0.0;
  double v = 0.0;
  double s = 0.0;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * factor;
  return u * factor;
}

bool is_symmetric(const SymMatrix& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < m.cols(); ++j) {
      if (std::abs(m(i, j) - m(j, i)) > rel_tol * scale) return false;
    }
  }
  return true;
}

LowerTriangular cholesky(const SymMatrix& m) {
  if (!is_symmetric(m)) throw NotSymmetric("cholesky: matrix is not symmetric");
  if (!m.allFinite()) throw NotPositiveDefinite("cholesky: non-finite entry");
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefinite("cholesky: non-positive pivot");
  }
  LowerTriangular l = llt.matrixL();
  return l;
}

SymMatrix spd_repair(const SymMatrix& m, double eps) {
  if (!is_symmetric(m)) throw NotSymmetric("spd_repair: matrix is not symmetric");
  const auto id = SymMatrix::Identity(m.rows(), m.cols());
  double delta = 0.0;
  for (int attempt = 0; attempt <= kRepairEscalations; ++attempt) {
    SymMatrix candidate = m + delta * id;
    if (candidate.allFinite()) {
      Eigen::LLT<Eigen::MatrixXd> llt(candidate);
      if (llt.info() == Eigen::Success) return candidate;
    }
    delta = (attempt == 0) ? eps : delta * 10.0;
  }
  throw RepairFailed("spd_repair: matrix still indefinite after jitter escalation");
}

std::vector<Vec> sample_mvn(const Vec& mean, const SymMatrix& cov, std::size_t k, Rng& rng) {
  return sample_mvn_factored(mean, cholesky(cov), k, rng);
}

std::vector<Vec> sample_mvn_factored(const Vec& mean, const LowerTriangular& l, std::size_t k,
                                     Rng& rng) {
  const Eigen::Index d = mean.size();
  std::vector<Vec> out;
  out.reserve(k);
  Vec z(d);
  for (std::size_t i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) z(j) = rng.normal();
    out.emplace_back(mean + l.triangularView<Eigen::Lower>() * z);
  }
  return out;
}

double mvn_log_pdf_factored(const Vec& mean, const LowerTriangular& chol, const Vec& x) {
  const auto d = static_cast<double>(mean.size());
  const Vec z = chol.triangularView<Eigen::Lower>().solve(x - mean);
  const double log_det = 2.0 * chol.diagonal().array().log().sum();
  return -0.5 * d * std::log(2.0 * std::numbers::pi) - 0.5 * log_det - 0.5 * z.squaredNorm();
}

double mvn_log_pdf(const Vec& mean, const SymMatrix& cov, const Vec& x) {
  return mvn_log_pdf_factored(mean, cholesky(cov), x);
}

double mvn_pdf(const Vec& mean, const SymMatrix& cov, const Vec& x) {
  return std::exp(mvn_log_pdf(mean, cov, x));
}

}  // namespace bcmaes
