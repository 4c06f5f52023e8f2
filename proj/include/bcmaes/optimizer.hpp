#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bcmaes/benchmarks.hpp"
#include "bcmaes/errors.hpp"
#include "bcmaes/kernels.hpp"
#include "bcmaes/likelihood.hpp"
#include "bcmaes/niw.hpp"
#include "bcmaes/restart.hpp"

namespace bcmaes {

struct OptimizerConfig {
  Vec x0;
  double sigma0 = 1.0;
  /// Overrides the prior built from (x0, sigma0) when set.
  std::optional<NiwParams> prior;
  /// 0 selects 4 + floor(3 ln d).
  std::size_t popsize = 0;
  std::size_t max_iter = 500;
  std::size_t stall_limit = 60;
  double var_norm_tol = 1e-12;
  Strategy strategy = Strategy::S2;
  /// From this iteration on (1-based) the other strategy is used.
  std::optional<std::size_t> strategy_switch_iter;
  RestartLevels levels;
  RestartFactors factors;
  std::uint64_t seed = 0;
  ExecutionMode eval_mode = ExecutionMode::Serial;
};

enum class StopReason { StallTerminated, MaxIter, VarNormSmall, ControllerTerminate, PriorDegeneracy };

struct IterationTrace {
  std::size_t iter = 0;
  double f_best_iter = 0.0;
  double f_min_so_far = 0.0;
  /// Mean and covariance norm of the state the next iteration samples from.
  Vec expected_mean;
  double cov_frobenius_norm = 0.0;
  std::size_t retrial = 0;
  RestartEvent event = RestartEvent::None;
};

struct RunResult {
  Vec x_best;
  double f_best = 0.0;
  std::size_t iterations = 0;
  StopReason stop_reason = StopReason::MaxIter;
  std::vector<IterationTrace> trace;
  /// Objective values that came back NaN and were treated as +inf.
  std::size_t nonfinite_evaluations = 0;
};

/// Everything one iteration saw; passed to the optional run observer.
struct IterationSnapshot {
  std::size_t iter;
  Strategy strategy;
  const NiwParams& prior;
  const Vec& sample_mean;
  const SymMatrix& sample_cov;
  const CandidateSet& candidates;
  const SummaryStats& summary;
  const NiwParams& posterior;
  const RestartDecision& decision;
  const NiwParams& next_state;
};

using RunObserver = std::function<void(const IterationSnapshot&)>;

/// Thrown when the belief state degenerates beyond repair mid-run. Carries
/// the iterations completed so far.
class PriorDegeneracy : public Error {
 public:
  PriorDegeneracy(const std::string& what, RunResult partial)
      : Error(what), partial_(std::move(partial)) {}
  const RunResult& partial() const { return partial_; }

 private:
  RunResult partial_;
};

std::size_t default_popsize(Eigen::Index dim);

/// mu = x0, kappa = 1, nu = d + 3, psi = sigma0^2 (nu - d - 1) I, so that the
/// initial expected covariance is sigma0^2 I.
NiwParams init_prior(const Vec& x0, double sigma0, Eigen::Index dim);

/// Throws InvalidConfig for a config that cannot run.
void validate(const OptimizerConfig& config);

/// Minimizes `objective`, spending exactly popsize evaluations per iteration.
RunResult run(const OptimizerConfig& config, const Objective& objective,
              const RunObserver& observer = {});

const char* to_string(StopReason r);
const char* to_string(Strategy s);

}  // namespace bcmaes
