#pragma once

// Independent reference computations for the unit and acceptance tests.
// Everything here works on plain std::vector and explicit loops; nothing
// calls into the library's numerical code.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

using RVec = std::vector<double>;
using RMat = std::vector<std::vector<double>>;

inline RMat zeros(std::size_t d) { return RMat(d, RVec(d, 0.0)); }

inline RMat outer(const RVec& a, const RVec& b) {
  RMat m = zeros(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) m[i][j] = a[i] * b[j];
  return m;
}

inline void axpy(RMat& acc, double w, const RMat& m) {
  for (std::size_t i = 0; i < acc.size(); ++i)
    for (std::size_t j = 0; j < acc.size(); ++j) acc[i][j] += w * m[i][j];
}

inline RVec sub(const RVec& a, const RVec& b) {
  RVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

/// Determinant and inverse by Gauss-Jordan with partial pivoting.
inline std::pair<double, RMat> det_inverse(RMat a) {
  const std::size_t n = a.size();
  RMat inv = zeros(n);
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1.0;
  double det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    if (p != c) {
      std::swap(a[p], a[c]);
      std::swap(inv[p], inv[c]);
      det = -det;
    }
    const double piv = a[c][c];
    det *= piv;
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] /= piv;
      inv[c][j] /= piv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return {det, inv};
}

/// Closed-form multivariate normal density.
inline double mvn_pdf(const RVec& mean, const RMat& cov, const RVec& x) {
  const auto [det, inv] = det_inverse(cov);
  const RVec dx = sub(x, mean);
  double q = 0.0;
  for (std::size_t i = 0; i < dx.size(); ++i)
    for (std::size_t j = 0; j < dx.size(); ++j) q += dx[i] * inv[i][j] * dx[j];
  const double d = static_cast<double>(mean.size());
  return std::pow(2.0 * std::numbers::pi, -d / 2.0) / std::sqrt(det) * std::exp(-0.5 * q);
}

/// Composite trapezoid rule.
template <class F>
double trapezoid(F f, double a, double b, std::size_t n) {
  const double h = (b - a) / static_cast<double>(n);
  double acc = 0.5 * (f(a) + f(b));
  for (std::size_t i = 1; i < n; ++i) acc += f(a + h * static_cast<double>(i));
  return acc * h;
}

struct Niw {
  RVec mu;
  double kappa;
  double nu;
  RMat psi;
};

/// Conjugate update from raw samples, written out term by term.
inline Niw niw_posterior_raw(const Niw& p, const std::vector<RVec>& xs) {
  const std::size_t d = p.mu.size();
  const double n = static_cast<double>(xs.size());
  RVec xbar(d, 0.0);
  for (const auto& x : xs)
    for (std::size_t i = 0; i < d; ++i) xbar[i] += x[i] / n;
  RMat scatter = zeros(d);
  for (const auto& x : xs) axpy(scatter, 1.0, outer(sub(x, xbar), sub(x, xbar)));
  Niw out;
  out.mu.resize(d);
  for (std::size_t i = 0; i < d; ++i) out.mu[i] = (p.kappa * p.mu[i] + n * xbar[i]) / (p.kappa + n);
  out.kappa = p.kappa + n;
  out.nu = p.nu + n;
  out.psi = p.psi;
  axpy(out.psi, 1.0, scatter);
  const RVec shift = sub(xbar, p.mu);
  axpy(out.psi, p.kappa * n / (p.kappa + n), outer(shift, shift));
  return out;
}

struct Population {
  std::vector<RVec> points;
  RVec fitness;
  RVec weights;
};

/// Index orders of the two-pass sort, computed by selection over
/// (key, original position) so that ties keep their earlier order.
inline std::vector<std::size_t> weight_desc_order(const RVec& w) {
  std::vector<std::size_t> remaining(w.size()), order;
  for (std::size_t i = 0; i < w.size(); ++i) remaining[i] = i;
  while (!remaining.empty()) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < remaining.size(); ++j)
      if (w[remaining[j]] > w[remaining[best]]) best = j;
    order.push_back(remaining[best]);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return order;
}

inline std::vector<std::size_t> fitness_asc_after(const std::vector<std::size_t>& first, const RVec& f) {
  std::vector<std::size_t> remaining = first, order;
  while (!remaining.empty()) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < remaining.size(); ++j)
      if (f[remaining[j]] < f[remaining[best]]) best = j;
    order.push_back(remaining[best]);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return order;
}

/// Returns (rank-paired weighted mean corrected against prior_mean,
///          rank-paired covariance corrected against prior_cov).
inline std::pair<RVec, RMat> corrected_moments(const Population& pop, const RVec& prior_mean,
                                               const RMat& prior_cov) {
  const std::size_t k = pop.points.size();
  const std::size_t d = prior_mean.size();
  const auto wo = weight_desc_order(pop.weights);
  const auto fo = fitness_asc_after(wo, pop.fitness);
  RVec sorted_mean(d, 0.0), raw_mean(d, 0.0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t c = 0; c < d; ++c) {
      sorted_mean[c] += pop.weights[wo[i]] * pop.points[fo[i]][c];
      raw_mean[c] += pop.weights[i] * pop.points[i][c];
    }
  RVec mean(d);
  for (std::size_t c = 0; c < d; ++c) mean[c] = sorted_mean[c] - (raw_mean[c] - prior_mean[c]);

  RMat cov = prior_cov;
  for (std::size_t i = 0; i < k; ++i) {
    const RVec a = sub(pop.points[fo[i]], sorted_mean);
    axpy(cov, pop.weights[wo[i]], outer(a, a));
    const RVec b = sub(pop.points[i], raw_mean);
    axpy(cov, -pop.weights[i], outer(b, b));
  }
  return {mean, cov};
}

inline std::size_t argmin(const RVec& f) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < f.size(); ++i)
    if (f[i] < f[best]) best = i;
  return best;
}

inline double rel_err(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

/// Random SPD matrix A A^T + d I with entries of A uniform in [-1, 1].
template <class Gen>
RMat random_spd(std::size_t d, Gen& gen) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  RMat a = zeros(d);
  for (auto& row : a)
    for (auto& v : row) v = u(gen);
  RMat m = zeros(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t l = 0; l < d; ++l) m[i][j] += a[i][l] * a[j][l];
      if (i == j) m[i][j] += static_cast<double>(d) * 0.1;
    }
  return m;
}

}  // namespace oracle
