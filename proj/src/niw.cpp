#include "bcmaes/niw.hpp"

#include <cmath>
#include <string>

#include "bcmaes/errors.hpp"

namespace bcmaes {
namespace {

void require_same_dim(const NiwParams& p, const Vec& v, const char* what) {
  if (v.size() != p.dim()) {
    throw InvariantViolation(std::string(what) + ": dimension mismatch");
  }
}

}  // namespace

void validate(const NiwParams& p) {
  const auto d = p.dim();
  if (d < 1) throw InvariantViolation("niw: empty mean");
  if (p.psi.rows() != d || p.psi.cols() != d) throw InvariantViolation("niw: psi has wrong shape");
  if (!p.mu.allFinite() || !p.psi.allFinite()) throw InvariantViolation("niw: non-finite entry");
  if (!(p.kappa > 0.0) || !std::isfinite(p.kappa)) throw InvariantViolation("niw: kappa must be > 0");
  if (!(p.nu > static_cast<double>(d) + 1.0)) {
    throw DegreesOfFreedomTooLow("niw: nu must exceed d + 1");
  }
  if (!is_symmetric(p.psi)) throw InvariantViolation("niw: psi not symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(p.psi);
  if (llt.info() != Eigen::Success) throw InvariantViolation("niw: psi not positive definite");
}

Vec expected_mean(const NiwParams& p) { return p.mu; }

SymMatrix expected_covariance(const NiwParams& p) {
  const double denom = p.nu - static_cast<double>(p.dim()) - 1.0;
  if (!(denom > 0.0)) throw DegreesOfFreedomTooLow("expected_covariance: nu <= d + 1");
  return p.psi / denom;
}

NiwParams posterior_update(const NiwParams& p, const SummaryStats& s) {
  validate(p);
  require_same_dim(p, s.mu_bar, "posterior_update");
  if (!(s.n_obs > 0.0)) throw InvariantViolation("posterior_update: n_obs must be positive");
  const double n = s.n_obs;
  const double k = p.kappa;
  const Vec shift = s.mu_bar - p.mu;

  NiwParams out;
  out.mu = (k * p.mu + n * s.mu_bar) / (k + n);
  out.kappa = k + n;
  out.nu = p.nu + n;
  out.psi = p.psi + s.sigma_bar + (k * n / (k + n)) * (shift * shift.transpose());
  out.psi = 0.5 * (out.psi + out.psi.transpose());

  Eigen::LLT<Eigen::MatrixXd> llt(out.psi);
  if (llt.info() != Eigen::Success) {
    const double scale = std::max(out.psi.diagonal().cwiseAbs().mean(), 1e-300);
    try {
      out.psi = spd_repair(out.psi, kRepairEpsilon * scale);
    } catch (const RepairFailed&) {
      throw InvariantViolation("posterior_update: psi not repairable to SPD");
    }
  }
  return out;
}

SummaryStats summarize_samples(std::span<const Vec> xs) {
  if (xs.empty()) throw InvariantViolation("summarize_samples: need at least one sample");
  const auto d = xs.front().size();
  Vec mean = Vec::Zero(d);
  for (const auto& x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  SymMatrix scatter = SymMatrix::Zero(d, d);
  for (const auto& x : xs) {
    const Vec c = x - mean;
    scatter.noalias() += c * c.transpose();
  }
  return {mean, scatter, static_cast<double>(xs.size())};
}

NiwParams posterior_update_raw(const NiwParams& p, std::span<const Vec> xs) {
  return posterior_update(p, summarize_samples(xs));
}

NigParams nig_posterior(const NigParams& p, std::span<const double> xs,
                        NigShiftConvention convention) {
  if (xs.empty()) throw InvariantViolation("nig_posterior: need at least one sample");
  const double n = static_cast<double>(xs.size());
  double xbar = 0.0;
  for (double x : xs) xbar += x;
  xbar /= n;
  double scatter = 0.0;
  for (double x : xs) scatter += (x - xbar) * (x - xbar);

  double shift = n * p.lambda / (n + p.lambda) * (xbar - p.mu) * (xbar - p.mu);
  if (convention == NigShiftConvention::HalvedShift) shift /= 2.0;

  NigParams out;
  out.mu = (p.lambda * p.mu + n * xbar) / (p.lambda + n);
  out.lambda = p.lambda + n;
  out.alpha = p.alpha + n / 2.0;
  out.beta = p.beta + 0.5 * (scatter + shift);
  return out;
}

UpdateWeights update_weights(const NiwParams& p, double n_obs) {
  const double d = static_cast<double>(p.dim());
  const double prior_dof = p.nu - d - 1.0;
  if (!(prior_dof > 0.0)) throw DegreesOfFreedomTooLow("update_weights: nu <= d + 1");
  const double denom = prior_dof + n_obs;
  UpdateWeights w;
  w.mean = n_obs / (p.kappa + n_obs);
  w.discount = prior_dof / denom;
  w.rank_one = p.kappa * n_obs / ((p.kappa + n_obs) * denom);
  w.scatter = 1.0 / denom;
  return w;
}

std::pair<Vec, SymMatrix> weighted_update_expectations(const NiwParams& p, const SummaryStats& s) {
  require_same_dim(p, s.mu_bar, "weighted_update_expectations");
  const UpdateWeights w = update_weights(p, s.n_obs);
  const Vec prior_mean = expected_mean(p);
  const SymMatrix prior_cov = expected_covariance(p);
  const Vec shift = s.mu_bar - prior_mean;
  Vec mean = prior_mean + w.mean * shift;
  SymMatrix cov = w.discount * prior_cov + w.rank_one * (shift * shift.transpose()) +
                  w.scatter * s.sigma_bar;
  return {std::move(mean), std::move(cov)};
}

nlohmann::json to_json(const NiwParams& p) {
  nlohmann::json j;
  j["mu"] = std::vector<double>(p.mu.data(), p.mu.data() + p.mu.size());
  j["kappa"] = p.kappa;
  j["nu"] = p.nu;
  auto rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < p.psi.rows(); ++i) {
    std::vector<double> row(static_cast<std::size_t>(p.psi.cols()));
    for (Eigen::Index c = 0; c < p.psi.cols(); ++c) row[static_cast<std::size_t>(c)] = p.psi(i, c);
    rows.push_back(row);
  }
  j["psi"] = rows;
  return j;
}

NiwParams niw_from_json(const nlohmann::json& j) {
  NiwParams p;
  const auto mu = j.at("mu").get<std::vector<double>>();
  p.mu = Eigen::Map<const Vec>(mu.data(), static_cast<Eigen::Index>(mu.size()));
  p.kappa = j.at("kappa").get<double>();
  p.nu = j.at("nu").get<double>();
  const auto& rows = j.at("psi");
  const auto d = static_cast<Eigen::Index>(mu.size());
  if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != d) {
    throw InvariantViolation("niw_from_json: psi must be a d x d array");
  }
  p.psi.resize(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const auto row = rows[static_cast<std::size_t>(i)].get<std::vector<double>>();
    if (static_cast<Eigen::Index>(row.size()) != d) {
      throw InvariantViolation("niw_from_json: psi must be a d x d array");
    }
    for (Eigen::Index c = 0; c < d; ++c) p.psi(i, c) = row[static_cast<std::size_t>(c)];
  }
  validate(p);
  return p;
}

}  // namespace bcmaes
