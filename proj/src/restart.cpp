#include "bcmaes/restart.hpp"

#include <limits>

#include "bcmaes/errors.hpp"

namespace bcmaes {

RestartState init_restart(const RestartLevels& levels, const RestartFactors& factors) {
  const auto& l = levels;
  if (!(l.l1 < l.l2 && l.l2 < l.l3 && l.l3 < l.l4 && l.l4 < l.l5)) {
    throw InvalidLevels("restart levels must satisfy L1 < L2 < L3 < L4 < L5");
  }
  const auto& k = factors;
  if (!(k.dilate > 1.0 && k.k2 < 1.0 && k.k3 <= k.k2 && k.k4 <= k.k3 && k.k4 > 0.0)) {
    throw InvalidLevels("restart factors must satisfy k1 > 1 and 0 < k4 <= k3 <= k2 < 1");
  }
  RestartState s;
  s.retrial = 0;
  s.f_min = std::numeric_limits<double>::max();
  s.levels = levels;
  s.factors = factors;
  s.restart_level = levels.l2;
  return s;
}

std::pair<RestartState, RestartDecision> step_restart(RestartState state, const Vec& x_best,
                                                      double f_best, const SymMatrix& sigma) {
  RestartDecision decision;
  if (f_best <= state.f_min) {
    state.f_min = f_best;
    state.x_min = x_best;
    state.sigma_min = sigma;
    state.retrial = 0;
    decision.improved = true;
    return {std::move(state), std::move(decision)};
  }

  ++state.retrial;
  const std::size_t r = state.retrial;
  const auto& l = state.levels;
  const auto& k = state.factors;

  if (r == state.restart_level && state.x_min) {
    decision.restart_point = state.x_min;
    decision.restart_sigma = state.sigma_min;
    decision.event = RestartEvent::Restart;
  }

  if (r <= l.l1) {
    decision.new_sigma_scale = 1.0;
  } else if (r < l.l2) {
    decision.new_sigma_scale = k.dilate;
    decision.event = RestartEvent::Dilate;
  } else if (r < l.l3) {
    decision.new_sigma_scale = k.k2;
  } else if (r < l.l4) {
    decision.new_sigma_scale = k.k3;
  } else if (r < l.l5) {
    decision.new_sigma_scale = k.k4;
  } else {
    decision = RestartDecision{};
    decision.action = RestartAction::Terminate;
    decision.event = RestartEvent::Terminate;
    return {std::move(state), std::move(decision)};
  }
  if (r >= l.l2 && decision.event != RestartEvent::Restart) decision.event = RestartEvent::Contract;
  return {std::move(state), std::move(decision)};
}

const char* to_string(RestartEvent e) {
  switch (e) {
    case RestartEvent::None: return "none";
    case RestartEvent::Dilate: return "dilate";
    case RestartEvent::Contract: return "contract";
    case RestartEvent::Restart: return "restart";
    case RestartEvent::Terminate: return "terminate-signal";
  }
  return "none";
}

}  // namespace bcmaes
