#pragma once

#include <span>
#include <utility>
#include <vector>

#include "bcmaes/linalg_stats.hpp"
#include "json.hpp"

namespace bcmaes {

/// Normal-Inverse-Wishart belief over the mean and covariance of the
/// sampling distribution.
///
/// `nu` and `kappa` are real so that repeated updates and rescaling compose
/// without rounding. A valid state has kappa > 0, nu > d + 1 and an SPD `psi`.
struct NiwParams {
  Vec mu;
  double kappa = 1.0;
  double nu = 0.0;
  SymMatrix psi;

  Eigen::Index dim() const { return mu.size(); }
};

/// Normal-Inverse-Gamma parameters, the one-dimensional specialization.
struct NigParams {
  double mu = 0.0;
  double lambda = 1.0;
  double alpha = 1.0;
  double beta = 1.0;
};

/// Likelihood summary fed to the conjugate update.
///
/// `sigma_bar` enters the scale update as is: for raw samples it is the
/// scatter sum, for the optimizer it is the corrected covariance estimate.
struct SummaryStats {
  Vec mu_bar;
  SymMatrix sigma_bar;
  double n_obs = 1.0;
};

/// Throws InvariantViolation describing the first broken invariant.
void validate(const NiwParams& p);

Vec expected_mean(const NiwParams& p);

/// psi / (nu - d - 1). Throws DegreesOfFreedomTooLow when nu <= d + 1.
SymMatrix expected_covariance(const NiwParams& p);

/// Conjugate update from summary statistics:
///   mu'    = (kappa mu + n mu_bar) / (kappa + n)
///   kappa' = kappa + n,  nu' = nu + n
///   psi'   = psi + sigma_bar + kappa n / (kappa + n) (mu_bar - mu)(mu_bar - mu)^T
NiwParams posterior_update(const NiwParams& p, const SummaryStats& s);

/// Sample mean and scatter sum of raw observations.
SummaryStats summarize_samples(std::span<const Vec> xs);

/// Conjugate update from raw observations, computed from the sample mean and
/// the scatter sum around it.
NiwParams posterior_update_raw(const NiwParams& p, std::span<const Vec> xs);

/// How the shift term enters the NIG scale update.
///
/// Standard: beta' = beta + (S + n lambda / (n + lambda) (xbar - mu)^2) / 2.
/// This is the exact conjugate result and the d = 1 image of the NIW update
/// under (alpha, beta, lambda) = (nu / 2, psi / 2, kappa).
///
/// HalvedShift: the shift term carries an extra factor 1/2, i.e.
/// (xbar - mu)^2 / 2 inside the bracket. Kept for comparison only; it is not
/// conjugate.
enum class NigShiftConvention { Standard, HalvedShift };

NigParams nig_posterior(const NigParams& p, std::span<const double> xs,
                        NigShiftConvention convention = NigShiftConvention::Standard);

/// Weights of the weighted-combination form of the expected-value update.
///
/// With D = nu + n - d - 1:
///   mean     = n / (kappa + n)
///   discount = (nu - d - 1) / D           (on the prior expected covariance)
///   rank_one = kappa n / ((kappa + n) D)  (on the mean shift outer product)
///   scatter  = 1 / D                      (on sigma_bar)
/// When n equals d these reduce to the (nu - n - 1)/(nu - 1), ... form.
struct UpdateWeights {
  double mean = 0.0;
  double discount = 0.0;
  double rank_one = 0.0;
  double scatter = 0.0;
};

UpdateWeights update_weights(const NiwParams& p, double n_obs);

/// Expected mean and covariance after one update, computed as a weighted
/// combination of the prior expectations and the summary. Agrees with
/// expected_mean / expected_covariance of posterior_update(p, s).
std::pair<Vec, SymMatrix> weighted_update_expectations(const NiwParams& p, const SummaryStats& s);

/// Flat JSON form {mu: [...], kappa, nu, psi: [[...], ...]}.
nlohmann::json to_json(const NiwParams& p);
NiwParams niw_from_json(const nlohmann::json& j);

}  // namespace bcmaes
