#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bcmaes/linalg_stats.hpp"
#include "bcmaes/niw.hpp"

namespace bcmaes {

/// Likelihood-mean estimator.
///   S1: rank-paired weighted mean corrected by the Monte-Carlo bias.
///   S2: best candidate of the population.
enum class Strategy { S1, S2 };

/// A sampled population: points, their fitness, prior densities and the
/// normalized weights `densities[i] / sum(densities)`.
struct CandidateSet {
  std::vector<Vec> points;
  std::vector<double> fitness;
  std::vector<double> densities;
  std::vector<double> weights;

  std::size_t size() const { return points.size(); }
};

/// Points in ascending fitness order paired with weights in descending order.
///
/// `point_order[i]` is the original index of the i-th point by fitness and
/// `weight_order[i]` the original index of the i-th largest weight.
struct RankedCandidateSet {
  std::vector<Vec> points_f_asc;
  std::vector<double> weights_w_desc;
  std::vector<std::size_t> point_order;
  std::vector<std::size_t> weight_order;
};

/// Throws NonPositiveDensity unless every density is finite and > 0.
std::vector<double> compute_weights(std::span<const double> densities);

/// Builds a CandidateSet, validating sizes and computing weights.
CandidateSet make_candidate_set(std::vector<Vec> points, std::vector<double> fitness,
                                std::vector<double> densities);

/// Two-pass ordering: a stable sort by weight (descending) followed by a
/// stable sort of the points by fitness (ascending). The weight array keeps
/// its order from the first pass. Throws NonFiniteFitness on NaN fitness.
RankedCandidateSet rank_candidates(const CandidateSet& c);

/// sum_i w_(i) X_(i) - (sum_i w_i X_i - prior_mean)
Vec strategy_one_mean(const RankedCandidateSet& r, const CandidateSet& c, const Vec& prior_mean);

/// Point of minimal fitness; the lowest index wins ties.
Vec strategy_two_mean(const CandidateSet& c);

/// Rank-paired weighted scatter minus the bias of the raw weighted scatter
/// relative to `prior_cov`. The result is symmetrized and, when indefinite,
/// repaired with jitter scaled by the mean diagonal of `prior_cov`.
SymMatrix corrected_covariance(const RankedCandidateSet& r, const CandidateSet& c,
                               const SymMatrix& prior_cov);

/// (mu_bar, sigma_bar, n_obs = k) for the conjugate update.
SummaryStats summarize(const CandidateSet& c, const Vec& prior_mean, const SymMatrix& prior_cov,
                       Strategy strategy);

}  // namespace bcmaes
