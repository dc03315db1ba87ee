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

// Synthetic coupling generator. The arm is a six-joint serial chain whose
// mass is lumped at the end-effector; its reaction on the base is
//
//   Delta_v = -(m_eq / m_tot) R a_rel
//   Delta_w = I^-1 (r x m_eq (g_body - a_rel))
//
// where r and a_rel are the end-effector position and acceleration relative
// to the base, in body coordinates, and g_body = R^T g n. Joint angles track
// sinusoidal commands through a first-order servo, solved in closed form.

#ifndef PPCSIM_CORE_ARM_MODEL_HPP_
#define PPCSIM_CORE_ARM_MODEL_HPP_

#include <array>

#include "dynamics.hpp"

namespace ppcsim {

inline constexpr int kArmJoints = 6;

struct JointSinusoid {
  double amplitude = 0.0;     // rad
  double frequency_hz = 0.0;  // Hz
  double phase = 0.0;         // rad
  double offset = 0.0;        // rad
};

struct ArmTrajectoryProfile {
  std::array<JointSinusoid, kArmJoints> joints{};
  double servo_time_constant = 0.02;  // s

  void validate() const;
};

struct JointState {
  std::array<double, kArmJoints> angle{};
  std::array<double, kArmJoints> rate{};
  std::array<double, kArmJoints> accel{};
};

// Throws Error(kNegativeTime) for t < 0.
JointState joint_state_at(const ArmTrajectoryProfile& profile, double t);

struct ArmLink {
  Vec3 axis = Vec3::UnitZ();     // joint axis in the parent frame
  Vec3 length = Vec3::Zero();    // child link vector in the joint frame, m
};

struct LumpedArmParams {
  double equivalent_mass = 0.8;  // kg, at the end-effector
  Vec3 mount_offset = Vec3(0.0, 0.0, 0.1);
  std::array<ArmLink, kArmJoints> links{};

  static LumpedArmParams default_chain();
  void validate(const QuadParams& quad) const;
};

// End-effector kinematics relative to the base, body frame.
struct EndEffectorState {
  Vec3 position = Vec3::Zero();
  Vec3 velocity = Vec3::Zero();
  Vec3 acceleration = Vec3::Zero();
  Vec3 angular_velocity = Vec3::Zero();
};

EndEffectorState forward_kinematics(const LumpedArmParams& arm, const JointState& joints);

CouplingSample coupling_from_arm(const LumpedArmParams& arm, const JointState& joints,
                                 const RigidBodyState& base, const QuadParams& quad);

struct ExternalForceEvent {
  double start = 0.0;  // s
  double stop = 1.0;   // s
  Vec3 force = Vec3::Zero();        // N, body frame
  Vec3 application_point = Vec3::Zero();  // m, body frame

  void validate() const;
};

inline constexpr double kForceRampSeconds = 0.05;

// Force is ramped linearly over kForceRampSeconds at both ends of the window.
CouplingSample external_force_coupling(const ExternalForceEvent& event,
                                       const RigidBodyState& base, const QuadParams& quad,
                                       double t);

struct ArmMotionStats {
  double peak_speed = 0.0;         // m/s
  double peak_acceleration = 0.0;  // m/s^2
  double peak_angular_rate = 0.0;  // rad/s
};

// Sampled on a uniform grid over [0, horizon].
ArmMotionStats arm_motion_stats(const ArmTrajectoryProfile& profile,
                                const LumpedArmParams& arm, double horizon, double step);

// Scales every joint amplitude by a common factor so that the sampled peak
// end-effector speed equals target_speed. Throws Error(kConfigInvalid) if the
// profile has no motion or the target cannot be met.
ArmTrajectoryProfile scale_profile_to_speed(const ArmTrajectoryProfile& profile,
                                            const LumpedArmParams& arm,
                                            double target_speed, double horizon,
                                            double step);

}  // namespace ppcsim

#endif  // PPCSIM_CORE_ARM_MODEL_HPP_
