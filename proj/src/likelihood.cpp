#include "bcmaes/likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bcmaes/errors.hpp"

namespace bcmaes {
namespace {

void check_fitness(std::span<const double> fitness) {
  for (double f : fitness) {
    if (std::isnan(f)) throw NonFiniteFitness("fitness is NaN");
  }
}

void check_shape(const CandidateSet& c) {
  const std::size_t k = c.points.size();
  if (k < 2) throw InvariantViolation("candidate set needs at least two points");
  if (c.fitness.size() != k || c.densities.size() != k || c.weights.size() != k) {
    throw InvariantViolation("candidate set arrays differ in length");
  }
}

}  // namespace

std::vector<double> compute_weights(std::span<const double> densities) {
  double total = 0.0;
  for (double d : densities) {
    if (!(d > 0.0) || !std::isfinite(d)) throw NonPositiveDensity("density must be finite and > 0");
    total += d;
  }
  std::vector<double> w(densities.size());
  for (std::size_t i = 0; i < densities.size(); ++i) w[i] = densities[i] / total;
  return w;
}

CandidateSet make_candidate_set(std::vector<Vec> points, std::vector<double> fitness,
                                std::vector<double> densities) {
  CandidateSet c;
  c.weights = compute_weights(densities);
  c.points = std::move(points);
  c.fitness = std::move(fitness);
  c.densities = std::move(densities);
  check_shape(c);
  return c;
}

RankedCandidateSet rank_candidates(const CandidateSet& c) {
  check_shape(c);
  check_fitness(c.fitness);
  const std::size_t k = c.size();

  std::vector<std::size_t> by_weight(k);
  std::iota(by_weight.begin(), by_weight.end(), std::size_t{0});
  std::stable_sort(by_weight.begin(), by_weight.end(),
                   [&](std::size_t a, std::size_t b) { return c.weights[a] > c.weights[b]; });

  std::vector<std::size_t> by_fitness = by_weight;
  std::stable_sort(by_fitness.begin(), by_fitness.end(),
                   [&](std::size_t a, std::size_t b) { return c.fitness[a] < c.fitness[b]; });

  RankedCandidateSet r;
  r.point_order = std::move(by_fitness);
  r.weight_order = std::move(by_weight);
  r.points_f_asc.reserve(k);
  r.weights_w_desc.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    r.points_f_asc.push_back(c.points[r.point_order[i]]);
    r.weights_w_desc.push_back(c.weights[r.weight_order[i]]);
  }
  return r;
}

namespace {

Vec ranked_mean(const RankedCandidateSet& r) {
  Vec m = Vec::Zero(r.points_f_asc.front().size());
  for (std::size_t i = 0; i < r.points_f_asc.size(); ++i) m += r.weights_w_desc[i] * r.points_f_asc[i];
  return m;
}

Vec raw_mean(const CandidateSet& c) {
  Vec m = Vec::Zero(c.points.front().size());
  for (std::size_t i = 0; i < c.size(); ++i) m += c.weights[i] * c.points[i];
  return m;
}

}  // namespace

Vec strategy_one_mean(const RankedCandidateSet& r, const CandidateSet& c, const Vec& prior_mean) {
  return ranked_mean(r) - (raw_mean(c) - prior_mean);
}

Vec strategy_two_mean(const CandidateSet& c) {
  check_fitness(c.fitness);
  if (c.points.empty()) throw InvariantViolation("strategy_two_mean: empty population");
  std::size_t best = 0;
  for (std::size_t i = 1; i < c.size(); ++i) {
    if (c.fitness[i] < c.fitness[best]) best = i;
  }
  return c.points[best];
}

SymMatrix corrected_covariance(const RankedCandidateSet& r, const CandidateSet& c,
                               const SymMatrix& prior_cov) {
  const auto d = prior_cov.rows();
  const Vec sorted_center = ranked_mean(r);
  const Vec raw_center = raw_mean(c);

  SymMatrix sorted_scatter = SymMatrix::Zero(d, d);
  for (std::size_t i = 0; i < r.points_f_asc.size(); ++i) {
    const Vec dx = r.points_f_asc[i] - sorted_center;
    sorted_scatter.noalias() += r.weights_w_desc[i] * (dx * dx.transpose());
  }
  SymMatrix raw_scatter = SymMatrix::Zero(d, d);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Vec dx = c.points[i] - raw_center;
    raw_scatter.noalias() += c.weights[i] * (dx * dx.transpose());
  }

  SymMatrix out = sorted_scatter - (raw_scatter - prior_cov);
  out = 0.5 * (out + out.transpose());
  Eigen::LLT<Eigen::MatrixXd> llt(out);
  if (llt.info() != Eigen::Success) {
    const double scale = std::max(prior_cov.diagonal().mean(), 1e-300);
    out = spd_repair(out, kRepairEpsilon * scale);
  }
  return out;
}

SummaryStats summarize(const CandidateSet& c, const Vec& prior_mean, const SymMatrix& prior_cov,
                       Strategy strategy) {
  const RankedCandidateSet r = rank_candidates(c);
  SummaryStats s;
  s.mu_bar = (strategy == Strategy::S1) ? strategy_one_mean(r, c, prior_mean) : strategy_two_mean(c);
  s.sigma_bar = corrected_covariance(r, c, prior_cov);
  s.n_obs = static_cast<double>(c.size());
  return s;
}

}  // namespace bcmaes
