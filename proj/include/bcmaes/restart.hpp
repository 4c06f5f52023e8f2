#pragma once

#include <cstddef>
#include <optional>
#include <utility>

#include "bcmaes/linalg_stats.hpp"

namespace bcmaes {

/// Retrial thresholds, strictly increasing.
struct RestartLevels {
  std::size_t l1 = 5;
  std::size_t l2 = 20;
  std::size_t l3 = 30;
  std::size_t l4 = 40;
  std::size_t l5 = 50;
};

/// Covariance multipliers: `dilate` > 1, then 1 > k2 >= k3 >= k4 > 0.
struct RestartFactors {
  double dilate = 1.5;
  double k2 = 0.9;
  double k3 = 0.7;
  double k4 = 0.5;
};

enum class RestartAction { Continue, Terminate };

/// What happened on a step, for traces.
enum class RestartEvent { None, Dilate, Contract, Restart, Terminate };

struct RestartState {
  std::size_t retrial = 0;
  double f_min = 0.0;
  std::optional<Vec> x_min;
  std::optional<SymMatrix> sigma_min;
  RestartLevels levels;
  RestartFactors factors;
  /// Retrial count at which the search jumps back to the best point (= l2).
  std::size_t restart_level = 0;
};

struct RestartDecision {
  RestartAction action = RestartAction::Continue;
  double new_sigma_scale = 1.0;
  std::optional<Vec> restart_point;
  std::optional<SymMatrix> restart_sigma;
  bool improved = false;
  RestartEvent event = RestartEvent::None;
};

/// Throws InvalidLevels when the level or factor ordering is violated.
RestartState init_restart(const RestartLevels& levels = {}, const RestartFactors& factors = {});

/// Advances the dilatation/contraction ladder by one iteration.
///
/// An iteration improves when f_best <= f_min; it records the point and the
/// covariance it was sampled under and resets the retrial counter. Otherwise
/// retrial is incremented and, on the new value r:
///   r == l2           restart at (x_min, sigma_min), then the k2 branch below
///   r <= l1           no change
///   l1 < r < l2       scale by dilate
///   l2 <= r < l3      scale by k2
///   l3 <= r < l4      scale by k3
///   l4 <= r < l5      scale by k4
///   r >= l5           terminate
std::pair<RestartState, RestartDecision> step_restart(RestartState state, const Vec& x_best,
                                                      double f_best, const SymMatrix& sigma);

const char* to_string(RestartEvent e);

}  // namespace bcmaes
