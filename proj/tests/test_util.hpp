#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "oracles.hpp"

namespace testutil {

inline Eigen::VectorXd to_eigen(const oracle::RVec& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline Eigen::MatrixXd to_eigen(const oracle::RMat& m) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(m.size()), static_cast<Eigen::Index>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m[i][j];
  return out;
}

inline oracle::RVec to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

inline double max_rel_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) worst = std::max(worst, oracle::rel_err(a(i, j), b(i, j)));
  return worst;
}

template <class Gen>
oracle::RVec random_vec(std::size_t d, Gen& gen, double lo = -3.0, double hi = 3.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  oracle::RVec v(d);
  for (auto& x : v) x = u(gen);
  return v;
}

}  // namespace testutil
