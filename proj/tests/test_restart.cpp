#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "bcmaes/errors.hpp"
#include "bcmaes/restart.hpp"

namespace bcmaes {
namespace {

const SymMatrix kEye = SymMatrix::Identity(2, 2);

RestartState after_improvement(double f = 1.0) {
  RestartState s = init_restart();
  s = step_restart(s, Vec::Constant(2, 0.5), f, kEye).first;
  return s;
}

TEST(InitRestart, Defaults) {
  const RestartState s = init_restart();
  EXPECT_EQ(s.retrial, 0u);
  EXPECT_EQ(s.f_min, std::numeric_limits<double>::max());
  EXPECT_FALSE(s.x_min.has_value());
  EXPECT_EQ(s.restart_level, 20u);
}

TEST(InitRestart, RejectsBadOrdering) {
  EXPECT_THROW(init_restart(RestartLevels{5, 5, 30, 40, 50}), InvalidLevels);
  EXPECT_THROW(init_restart(RestartLevels{5, 20, 30, 40, 35}), InvalidLevels);
  EXPECT_THROW(init_restart({}, RestartFactors{1.0, 0.9, 0.7, 0.5}), InvalidLevels);
  EXPECT_THROW(init_restart({}, RestartFactors{1.5, 0.5, 0.7, 0.5}), InvalidLevels);
  EXPECT_THROW(init_restart({}, RestartFactors{1.5, 0.9, 0.7, 0.0}), InvalidLevels);
}

TEST(StepRestart, FirstStepAlwaysImproves) {
  const auto [s, d] = step_restart(init_restart(), Vec::Constant(2, 3.0), 1e300, kEye);
  EXPECT_TRUE(d.improved);
  EXPECT_EQ(s.f_min, 1e300);
  EXPECT_EQ(*s.x_min, Vec::Constant(2, 3.0));
  EXPECT_EQ(d.new_sigma_scale, 1.0);
  EXPECT_EQ(d.event, RestartEvent::None);
}

TEST(StepRestart, EqualValueCountsAsImprovement) {
  RestartState s = after_improvement(2.0);
  s.retrial = 7;
  const auto [t, d] = step_restart(s, Vec::Zero(2), 2.0, 3.0 * kEye);
  EXPECT_TRUE(d.improved);
  EXPECT_EQ(t.retrial, 0u);
  EXPECT_EQ(*t.sigma_min, 3.0 * kEye);
}

TEST(StepRestart, NoChangeUpToFirstLevel) {
  RestartState s = after_improvement();
  s.retrial = 3;
  const auto [t, d] = step_restart(s, Vec::Zero(2), 2.0, kEye);
  EXPECT_EQ(t.retrial, 4u);
  EXPECT_EQ(d.new_sigma_scale, 1.0);
  EXPECT_EQ(d.event, RestartEvent::None);
  EXPECT_EQ(d.action, RestartAction::Continue);
}

TEST(StepRestart, DilatesInsideSecondBand) {
  RestartState s = after_improvement();
  s.retrial = 7;
  const auto [t, d] = step_restart(s, Vec::Zero(2), 2.0, kEye);
  EXPECT_EQ(t.retrial, 8u);
  EXPECT_EQ(d.new_sigma_scale, 1.5);
  EXPECT_EQ(d.event, RestartEvent::Dilate);
}

TEST(StepRestart, RestartsAtSecondLevel) {
  RestartState s = after_improvement();
  s.retrial = 19;
  const auto [t, d] = step_restart(s, Vec::Zero(2), 2.0, 9.0 * kEye);
  EXPECT_EQ(t.retrial, 20u);
  ASSERT_TRUE(d.restart_point && d.restart_sigma);
  EXPECT_EQ(*d.restart_point, Vec::Constant(2, 0.5));
  EXPECT_EQ(*d.restart_sigma, kEye);
  EXPECT_EQ(d.new_sigma_scale, 0.9);
  EXPECT_EQ(d.event, RestartEvent::Restart);
}

TEST(StepRestart, ContractsWithDecreasingFactors) {
  RestartState s = after_improvement();
  for (auto [before, factor] : {std::pair<std::size_t, double>{28, 0.9}, {34, 0.7}, {44, 0.5}}) {
    s.retrial = before;
    const auto [t, d] = step_restart(s, Vec::Zero(2), 2.0, kEye);
    EXPECT_EQ(d.new_sigma_scale, factor) << before;
    EXPECT_EQ(d.event, RestartEvent::Contract);
    EXPECT_FALSE(d.restart_point.has_value());
  }
}

TEST(StepRestart, TerminatesAtLastLevel) {
  RestartState s = after_improvement();
  s.retrial = 49;
  const auto [t, d] = step_restart(s, Vec::Zero(2), 2.0, kEye);
  EXPECT_EQ(d.action, RestartAction::Terminate);
  EXPECT_EQ(d.event, RestartEvent::Terminate);
  EXPECT_EQ(t.retrial, 50u);
}

TEST(StepRestart, FullLadderWithoutImprovement) {
  RestartState s = after_improvement(0.0);
  std::size_t steps = 0;
  std::size_t restarts = 0;
  for (;;) {
    auto [t, d] = step_restart(s, Vec::Zero(2), 1.0, kEye);
    ++steps;
    const std::size_t r = t.retrial;
    EXPECT_EQ(r, steps);
    EXPECT_FALSE(d.improved);
    if (d.restart_point) ++restarts;
    if (d.action == RestartAction::Terminate) break;
    double want = 1.0;
    if (r > 5 && r < 20) want = 1.5;
    else if (r >= 20 && r < 30) want = 0.9;
    else if (r >= 30 && r < 40) want = 0.7;
    else if (r >= 40) want = 0.5;
    EXPECT_EQ(d.new_sigma_scale, want) << r;
    s = std::move(t);
  }
  EXPECT_EQ(steps, 50u);
  EXPECT_EQ(restarts, 1u);
}

TEST(StepRestart, RetrialResetsOrIncrementsProperty) {
  std::mt19937_64 gen(41);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  RestartState s = init_restart();
  for (int i = 0; i < 2000; ++i) {
    const double f = u(gen);
    const std::size_t before = s.retrial;
    const double fmin = s.f_min;
    auto [t, d] = step_restart(s, Vec::Zero(2), f, kEye);
    if (f <= fmin) {
      EXPECT_EQ(t.retrial, 0u);
      EXPECT_TRUE(d.improved);
    } else {
      EXPECT_EQ(t.retrial, before + 1);
      EXPECT_GT(d.new_sigma_scale, 0.0);
    }
    EXPECT_LE(t.f_min, fmin);
    if (d.action == RestartAction::Terminate) {
      s = init_restart();
    } else {
      s = std::move(t);
    }
  }
}

TEST(RestartEventNames, Stable) {
  EXPECT_STREQ(to_string(RestartEvent::None), "none");
  EXPECT_STREQ(to_string(RestartEvent::Dilate), "dilate");
  EXPECT_STREQ(to_string(RestartEvent::Contract), "contract");
  EXPECT_STREQ(to_string(RestartEvent::Restart), "restart");
  EXPECT_STREQ(to_string(RestartEvent::Terminate), "terminate-signal");
}

}  // namespace
}  // namespace bcmaes
