// Copyright 2026 The ppcsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Randomized sweeps over the invariants each module promises.

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "arm_model.hpp"
#include "config.hpp"
#include "controllers.hpp"
#include "envelope.hpp"
#include "eso.hpp"
#include "trial.hpp"

namespace ppcsim {
namespace {

class Sweep : public ::testing::Test {
 protected:
  std::mt19937_64 rng{20260101};
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  }
  Vec3 uniform3(double lo, double hi) { return Vec3(uniform(lo, hi), uniform(lo, hi), uniform(lo, hi)); }
};

TEST_F(Sweep, GainFunctionIsOddSignPreservingAndBounded) {
  for (int i = 0; i < 5000; ++i) {
    const GainFunctionParams p{uniform(0.05, 3.0), uniform(0.05, 20.0)};
    const double e = uniform(-800.0, 800.0) * std::pow(10.0, uniform(-6.0, 0.0));
    const double g = gain_g(e, p);
    ASSERT_TRUE(std::isfinite(g));
    EXPECT_EQ(gain_g(-e, p), -g);
    EXPECT_EQ(std::signbit(g), std::signbit(e));
    EXPECT_LE(std::abs(g), std::abs(e) / p.w * (1 + 1e-15));
  }
}

TEST_F(Sweep, EsoIsBitReproducible) {
  const std::array<EsoParams, 3> params{EsoParams{0.3, 0.2, {}}, EsoParams{1.0, 0.5, {}},
                                        EsoParams{2.0, 0.7, {0.8, 3.0}}};
  EsoTriplet a(params), b(params);
  const Vec3 y0 = uniform3(-1, 1);
  a.initialize(y0);
  b.initialize(y0);
  for (int k = 0; k < 5000; ++k) {
    const Vec3 y = uniform3(-2, 2);
    const Vec3 u = uniform3(-5, 5);
    ASSERT_EQ(a.step(y, u, 1e-3), b.step(y, u, 1e-3));
  }
}

TEST_F(Sweep, PresetTrajectoryStartsExactlyOnTheMeasuredError) {
  for (int i = 0; i < 2000; ++i) {
    const Vec3 e0 = uniform3(-2, 2);
    const Vec3 de0 = uniform3(-5, 5);
    const PresetTrajectory traj = PresetTrajectory::from_initial_error(
        e0, de0, uniform3(0.1, 20), uniform(0.1, 5));
    const BetaSample s = traj.at(0.0);
    ASSERT_EQ(s.beta, e0);
    ASSERT_EQ(s.dbeta, de0);
  }
}

TEST_F(Sweep, AdmissibleCKeepsPresetTrajectoryInside) {
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    PerformanceEnvelope env{uniform3(0.5, 4.0), Vec3::Zero(), uniform(0.3, 3.0)};
    env.rho_inf = env.rho0.cwiseProduct(uniform3(0.05, 0.3));
    const MarginConstants margins{env.rho_inf.cwiseProduct(uniform3(0.1, 0.9))};
    const Vec3 e0 = (env.rho0 - margins.epsilon).cwiseProduct(uniform3(-0.9, 0.9));
    const Vec3 de0 = uniform3(-3, 3);
    const PresetTrajectory probe =
        PresetTrajectory::from_initial_error(e0, de0, Vec3::Ones(), env.decay_rate);
    const CBoundReport bound = validate_c(probe, env, margins);
    const Vec3 c = bound.c_min * uniform(1.01, 3.0) + Vec3::Constant(1e-6);
    const PresetTrajectory traj =
        PresetTrajectory::from_initial_error(e0, de0, c, env.decay_rate);
    ASSERT_TRUE(validate_c(traj, env, margins).all_admissible());
    const ContainmentReport r =
        containment_check(traj, env, margins, TimeGrid{1e-3, 5.0 / env.decay_rate});
    EXPECT_TRUE(r.contained) << "draw " << i;
    ++checked;
  }
  EXPECT_EQ(checked, 200);
}

TEST_F(Sweep, DesiredAttitudeIsAlwaysSpecialOrthogonal) {
  for (int i = 0; i < 5000; ++i) {
    Vec3 tv = uniform3(-10, 10);
    if (tv.norm() < 1e-3 || std::abs(tv.normalized().z()) > 0.999) continue;
    const double yaw = uniform(-3.2, 3.2);
    const Vec3 heading(std::cos(yaw), std::sin(yaw), 0.0);
    if (tv.normalized().cross(heading).norm() < 1e-3) continue;
    const Mat3 m = desired_attitude(tv, yaw).matrix();
    ASSERT_LT((m.transpose() * m - Mat3::Identity()).norm(), 1e-9);
    ASSERT_NEAR(m.determinant(), 1.0, 1e-9);
  }
}

double max_increment(const LumpedArmParams& arm, const ArmTrajectoryProfile& p,
                     const QuadParams& quad, double h, double horizon) {
  CouplingSample prev = coupling_from_arm(arm, joint_state_at(p, 0.0), RigidBodyState{}, quad);
  double jump = 0.0;
  const int n = static_cast<int>(std::lround(horizon / h));
  for (int k = 1; k <= n; ++k) {
    const CouplingSample c = coupling_from_arm(arm, joint_state_at(p, h * k), RigidBodyState{}, quad);
    EXPECT_TRUE(c.delta_v.allFinite() && c.delta_omega.allFinite());
    jump = std::max(jump, (c.delta_v - prev.delta_v).norm() + (c.delta_omega - prev.delta_omega).norm());
    prev = c;
  }
  return jump;
}

// Continuity: the largest increment shrinks with the sampling step.
TEST_F(Sweep, ArmCouplingIsFiniteAndContinuous) {
  const QuadParams quad;
  const LumpedArmParams arm = LumpedArmParams::default_chain();
  for (int i = 0; i < 10; ++i) {
    ArmTrajectoryProfile p;
    p.servo_time_constant = uniform(0.005, 0.1);
    for (JointSinusoid& j : p.joints) j = {uniform(-0.8, 0.8), uniform(0, 2), uniform(0, 6.3), uniform(-1, 1)};
    const double coarse = max_increment(arm, p, quad, 1e-4, 2.0);
    const double fine = max_increment(arm, p, quad, 1e-5, 2.0);
    EXPECT_LT(fine, 0.2 * coarse + 1e-12) << "draw " << i;
  }
}

TEST_F(Sweep, ConfigRoundTripsUnderPerturbation) {
  for (int i = 0; i < 50; ++i) {
    SimConfig cfg = default_config();
    cfg.dt = uniform(1e-4, 2e-3);
    cfg.controller.position.k = uniform3(0.5, 10);
    cfg.controller.attitude.lambda = uniform3(1, 30);
    cfg.controller.position.eso[1].epsilon = uniform(0.01, 0.99);
    cfg.arm.profile.joints[i % kArmJoints].amplitude = uniform(-1, 1);
    cfg.scenarios[2].reference.radius = uniform(0.1, 3);
    cfg.noise.velocity_std = uniform(0, 0.05);
    const std::string text = serialize_config(cfg);
    const SimConfig back = parse_config(text);
    ASSERT_EQ(serialize_config(back), text);
    ASSERT_EQ(config_hash(back), config_hash(cfg));
  }
}

// Closed loop: after t_f each |z_p,i| stays below delta_v / (Lambda_ii
// lambda_min(K_p)) with delta_v measured from the observer log.
TEST(ClosedLoopProperty, PositionDeviationBoundPerAxis) {
  const SimConfig cfg = default_config();
  const PositionCtlConfig& p = cfg.controller.position;
  for (const std::string sc : {"setpoint", "circle", "figure_eight"}) {
    for (std::uint64_t seed : {1u, 2u}) {
      const TrialRecord rec = run_trial(cfg, sc, ControllerVariant::kProposed, seed);
      const Vec3 bound = rec.delta_f_v / p.k.minCoeff() * p.lambda.cwiseInverse();
      for (const TickRow& row : rec.rows) {
        if (row.t < rec.convergence_time) continue;
        for (int i = 0; i < 3; ++i) {
          ASSERT_LE(std::abs(row.z_p[i]), bound[i] + 1e-3) << sc << " t=" << row.t;
        }
      }
    }
  }
}

double sup_z_after(const SimConfig& cfg, const std::string& scenario, int axis) {
  const TrialRecord rec = run_trial(cfg, scenario, ControllerVariant::kProposed, 1);
  double sup = 0.0;
  for (const TickRow& row : rec.rows) {
    if (row.t >= rec.convergence_time) sup = std::max(sup, std::abs(row.z_p[axis]));
  }
  return sup;
}

// Doubling Lambda_p halves the deviation within 25%. The cart-pull load is
// persistent, so the residual estimate error is quasi-static there; under
// arm swing it oscillates faster than Lambda_p and the ratio is recorded
// only.
TEST(ClosedLoopProperty, DoublingLambdaHalvesDeviation) {
  SimConfig base = default_config();
  SimConfig doubled = base;
  doubled.controller.position.lambda *= 2.0;
  for (int axis : {1, 2}) {
    const double ratio = sup_z_after(doubled, "cart_pull", axis) / sup_z_after(base, "cart_pull", axis);
    EXPECT_GT(ratio, 0.5 * 0.75) << "axis " << axis;
    EXPECT_LT(ratio, 0.5 * 1.25) << "axis " << axis;
  }
  const double swing = sup_z_after(doubled, "setpoint", 1) / sup_z_after(base, "setpoint", 1);
  RecordProperty("setpoint_y_ratio", std::to_string(swing));
  EXPECT_LT(swing, 1.0);
}

}  // namespace
}  // namespace ppcsim
