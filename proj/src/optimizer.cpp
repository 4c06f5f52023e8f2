#include "bcmaes/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bcmaes {
namespace {

Strategy other(Strategy s) { return s == Strategy::S1 ? Strategy::S2 : Strategy::S1; }

Strategy strategy_at(const OptimizerConfig& c, std::size_t iter) {
  if (c.strategy_switch_iter && iter >= *c.strategy_switch_iter) return other(c.strategy);
  return c.strategy;
}

double dof_offset(const NiwParams& p) { return p.nu - static_cast<double>(p.dim()) - 1.0; }

/// Covariance to sample from. A covariance that no longer factorizes is
/// repaired and written back so the state and the sampler stay in agreement.
SymMatrix sampling_covariance(NiwParams& state) {
  SymMatrix cov = expected_covariance(state);
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) {
    const double scale = std::max(cov.diagonal().cwiseAbs().mean(), 1e-300);
    cov = spd_repair(cov, kRepairEpsilon * scale);
    state.psi = cov * dof_offset(state);
  }
  return cov;
}

}  // namespace

std::size_t default_popsize(Eigen::Index dim) {
  return 4 + static_cast<std::size_t>(std::floor(3.0 * std::log(static_cast<double>(dim))));
}

NiwParams init_prior(const Vec& x0, double sigma0, Eigen::Index dim) {
  if (!(sigma0 > 0.0) || !std::isfinite(sigma0)) throw InvalidConfig("init_prior: sigma0 must be > 0");
  if (x0.size() != dim) throw InvalidConfig("init_prior: x0 dimension mismatch");
  NiwParams p;
  p.mu = x0;
  p.kappa = 1.0;
  p.nu = static_cast<double>(dim) + 3.0;
  p.psi = sigma0 * sigma0 * dof_offset(p) * SymMatrix::Identity(dim, dim);
  return p;
}

void validate(const OptimizerConfig& c) {
  if (c.x0.size() < 1) throw InvalidConfig("x0 must have at least one coordinate");
  if (!c.x0.allFinite()) throw InvalidConfig("x0 must be finite");
  if (!c.prior && !(c.sigma0 > 0.0)) throw InvalidConfig("sigma0 must be > 0");
  const std::size_t k = c.popsize == 0 ? default_popsize(c.x0.size()) : c.popsize;
  if (k < 2) throw InvalidConfig("popsize must be >= 2");
  if (c.max_iter < 1) throw InvalidConfig("max_iter must be >= 1");
  if (!(c.var_norm_tol > 0.0)) throw InvalidConfig("var_norm_tol must be > 0");
  if (c.prior) {
    if (c.prior->dim() != c.x0.size()) throw InvalidConfig("prior dimension differs from x0");
    validate(*c.prior);
  }
  init_restart(c.levels, c.factors);
}

RunResult run(const OptimizerConfig& config, const Objective& objective, const RunObserver& observer) {
  validate(config);
  const Eigen::Index d = config.x0.size();
  const std::size_t k = config.popsize == 0 ? default_popsize(d) : config.popsize;

  NiwParams state = config.prior ? *config.prior : init_prior(config.x0, config.sigma0, d);
  RestartState controller = init_restart(config.levels, config.factors);
  Rng rng(config.seed);

  RunResult result;
  result.f_best = std::numeric_limits<double>::infinity();
  result.x_best = state.mu;
  std::size_t stall = 0;

  for (std::size_t iter = 1;; ++iter) {
    try {
      const NiwParams prior = state;
      const SymMatrix cov = sampling_covariance(state);
      const Vec mean = expected_mean(state);
      const LowerTriangular chol = cholesky(cov);

      std::vector<Vec> points = sample_mvn_factored(mean, chol, k, rng);
      std::vector<double> fitness = evaluate_population(points, objective, config.eval_mode);
      std::vector<double> densities = mvn_densities(mean, chol, points, config.eval_mode);
      for (double f : fitness) {
        if (std::isinf(f) && f > 0) ++result.nonfinite_evaluations;
      }

      const std::size_t best = static_cast<std::size_t>(
          std::min_element(fitness.begin(), fitness.end()) - fitness.begin());
      const Vec x_best_iter = points[best];
      const double f_best_iter = fitness[best];

      const Strategy strategy = strategy_at(config, iter);
      const CandidateSet candidates =
          make_candidate_set(std::move(points), std::move(fitness), std::move(densities));
      const SummaryStats summary = summarize(candidates, mean, cov, strategy);
      const NiwParams posterior = posterior_update(state, summary);
      state = posterior;

      auto [next_controller, decision] = step_restart(std::move(controller), x_best_iter, f_best_iter, cov);
      controller = std::move(next_controller);

      if (decision.action == RestartAction::Continue) {
        if (decision.restart_point) {
          state.mu = *decision.restart_point;
          state.psi = *decision.restart_sigma * dof_offset(state);
        }
        state.psi *= decision.new_sigma_scale;
      }
      stall = decision.improved ? 0 : stall + 1;

      if (f_best_iter < result.f_best) result.f_best = f_best_iter;
      if (controller.x_min) result.x_best = *controller.x_min;

      IterationTrace row;
      row.iter = iter;
      row.f_best_iter = f_best_iter;
      row.f_min_so_far = controller.x_min ? controller.f_min : std::numeric_limits<double>::infinity();
      row.expected_mean = expected_mean(state);
      row.cov_frobenius_norm = expected_covariance(state).norm();
      row.retrial = controller.retrial;
      row.event = decision.event;
      result.trace.push_back(row);
      result.iterations = iter;

      if (observer) {
        observer(IterationSnapshot{iter, strategy, prior, mean, cov, candidates, summary, posterior,
                                   decision, state});
      }

      if (decision.action == RestartAction::Terminate) {
        result.stop_reason = StopReason::ControllerTerminate;
        break;
      }
      if (row.cov_frobenius_norm < config.var_norm_tol) {
        result.stop_reason = StopReason::VarNormSmall;
        break;
      }
      if (stall >= config.stall_limit) {
        result.stop_reason = StopReason::StallTerminated;
        break;
      }
      if (iter >= config.max_iter) {
        result.stop_reason = StopReason::MaxIter;
        break;
      }
    } catch (const PriorDegeneracy&) {
      throw;
    } catch (const RepairFailed& e) {
      result.stop_reason = StopReason::PriorDegeneracy;
      throw PriorDegeneracy(e.what(), std::move(result));
    } catch (const InvariantViolation& e) {
      result.stop_reason = StopReason::PriorDegeneracy;
      throw PriorDegeneracy(e.what(), std::move(result));
    } catch (const NotPositiveDefinite& e) {
      result.stop_reason = StopReason::PriorDegeneracy;
      throw PriorDegeneracy(e.what(), std::move(result));
    } catch (const NonPositiveDensity& e) {
      result.stop_reason = StopReason::PriorDegeneracy;
      throw PriorDegeneracy(e.what(), std::move(result));
    }
  }
  return result;
}

const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::StallTerminated: return "StallTerminated";
    case StopReason::MaxIter: return "MaxIter";
    case StopReason::VarNormSmall: return "VarNormSmall";
    case StopReason::ControllerTerminate: return "ControllerTerminate";
    case StopReason::PriorDegeneracy: return "PriorDegeneracy";
  }
  return "MaxIter";
}

const char* to_string(Strategy s) { return s == Strategy::S1 ? "s1" : "s2"; }

}  // namespace bcmaes
