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

// Ground-truth plant: quadcopter base in a north-east-down inertial frame
// with the arm's reaction entering as additive accelerations.
//
//   p' = v
//   v' = -T R n / (m_B + m_R) + g n + Delta_v
//   R' = R [w]x
//   w' = I^-1 (tau - w x I w) + Delta_w

#ifndef PPCSIM_CORE_DYNAMICS_HPP_
#define PPCSIM_CORE_DYNAMICS_HPP_

#include <functional>
#include <random>

#include "so3.hpp"

namespace ppcsim {

struct QuadParams {
  double base_mass = 5.40;  // kg
  double arm_mass = 2.32;   // kg
  Mat3 inertia = Vec3(0.16, 0.16, 0.28).asDiagonal();
  double gravity = 9.81;

  double total_mass() const { return base_mass + arm_mass; }

  // Masses > 0 (arm mass >= 0), inertia symmetric positive-definite.
  void validate() const;
};

struct RigidBodyState {
  Vec3 p = Vec3::Zero();
  Vec3 v = Vec3::Zero();
  Rotation R;
  Vec3 omega = Vec3::Zero();

  bool all_finite() const;
};

struct ControlCommand {
  double thrust = 0.0;           // N
  Vec3 torque = Vec3::Zero();    // N m, body frame
};

struct CouplingSample {
  Vec3 delta_v = Vec3::Zero();      // m/s^2, inertial
  Vec3 delta_omega = Vec3::Zero();  // rad/s^2, body
};

struct StateDerivative {
  Vec3 dp = Vec3::Zero();
  Vec3 dv = Vec3::Zero();
  Mat3 dR = Mat3::Zero();
  Vec3 domega = Vec3::Zero();
};

StateDerivative derivative(const RigidBodyState& state, const ControlCommand& cmd,
                           const CouplingSample& coupling, const QuadParams& params);

// Coupling may depend on the base attitude (body-frame reactions are rotated
// into the inertial frame), so the callback receives the stage state too.
using CouplingFn = std::function<CouplingSample(double t, const RigidBodyState&)>;

// Classical RK4 with the command held over [t, t + dt]; the rotation is
// projected back onto SO(3) afterwards. Throws NonFiniteStateError.
RigidBodyState rk4_step(const RigidBodyState& state, const ControlCommand& cmd,
                        const CouplingFn& coupling, double t, double dt,
                        const QuadParams& params);

struct NoiseConfig {
  double velocity_std = 0.0;          // m/s
  double angular_velocity_std = 0.0;  // rad/s
};

// Zero-mean Gaussian noise on v and omega. Returns the state untouched (and
// draws nothing) when both deviations are zero.
RigidBodyState add_measurement_noise(const RigidBodyState& state,
                                     const NoiseConfig& noise, std::mt19937_64& rng);

}  // namespace ppcsim

#endif  // PPCSIM_CORE_DYNAMICS_HPP_
