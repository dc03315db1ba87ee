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

#include "arm_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "error.hpp"

namespace ppcsim {

void ArmTrajectoryProfile::validate() const {
  if (!(servo_time_constant > 0.0) || !std::isfinite(servo_time_constant)) {
    throw Error(ErrorCode::kInvalidArgument, "servo time constant must be > 0");
  }
  for (int j = 0; j < kArmJoints; ++j) {
    const JointSinusoid& s = joints[j];
    if (!(s.frequency_hz >= 0.0) || !std::isfinite(s.amplitude) ||
        !std::isfinite(s.frequency_hz) || !std::isfinite(s.phase) ||
        !std::isfinite(s.offset)) {
      std::ostringstream os;
      os << "joint " << j + 1 << ": invalid sinusoid";
      throw Error(ErrorCode::kInvalidArgument, os.str());
    }
  }
}

JointState joint_state_at(const ArmTrajectoryProfile& profile, double t) {
  if (t < 0.0) throw Error(ErrorCode::kNegativeTime, "joint_state_at: negative time");
  const double tau = profile.servo_time_constant;
  const double decay = std::exp(-t / tau);
  JointState js;
  for (int j = 0; j < kArmJoints; ++j) {
    const JointSinusoid& s = profile.joints[j];
    const double w = 2.0 * std::numbers::pi * s.frequency_hz;
    // Steady-state response of tau theta' + theta = cmd, plus the transient
    // that starts the joint at rest on cmd(0).
    const double amp = s.amplitude / std::hypot(1.0, w * tau);
    const double lag = std::atan(w * tau);
    const double arg = w * t + s.phase - lag;
    const double c = s.amplitude * std::sin(s.phase) - amp * std::sin(s.phase - lag);
    js.angle[j] = s.offset + amp * std::sin(arg) + c * decay;
    js.rate[j] = amp * w * std::cos(arg) - c / tau * decay;
    js.accel[j] = -amp * w * w * std::sin(arg) + c / (tau * tau) * decay;
  }
  return js;
}

LumpedArmParams LumpedArmParams::default_chain() {
  LumpedArmParams arm;
  arm.equivalent_mass = 0.8;
  arm.mount_offset = Vec3(0.0, 0.0, 0.12);
  arm.links = {{
      {Vec3::UnitZ(), Vec3(0.0, 0.0, 0.04)},   // base yaw
      {Vec3::UnitY(), Vec3(0.16, 0.0, 0.0)},   // shoulder
      {Vec3::UnitY(), Vec3(0.14, 0.0, 0.0)},   // elbow
      {Vec3::UnitX(), Vec3(0.03, 0.0, 0.0)},   // wrist roll
      {Vec3::UnitY(), Vec3(0.03, 0.0, 0.0)},   // wrist pitch
      {Vec3::UnitX(), Vec3(0.02, 0.0, 0.0)},   // tool roll
  }};
  return arm;
}

void LumpedArmParams::validate(const QuadParams& quad) const {
  if (!(equivalent_mass >= 0.0) || equivalent_mass > quad.arm_mass) {
    throw Error(ErrorCode::kInvalidArgument,
                "arm equivalent mass must lie in [0, arm mass]");
  }
  if (!mount_offset.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "arm mount offset must be finite");
  }
  for (const ArmLink& link : links) {
    if (!link.length.allFinite() || std::abs(link.axis.norm() - 1.0) > 1e-9) {
      throw Error(ErrorCode::kInvalidArgument, "arm links need unit axes and finite lengths");
    }
  }
}

EndEffectorState forward_kinematics(const LumpedArmParams& arm, const JointState& joints) {
  // Recursive forward pass, everything expressed in the base body frame.
  Mat3 frame = Mat3::Identity();
  Vec3 pos = arm.mount_offset;
  Vec3 vel = Vec3::Zero();
  Vec3 acc = Vec3::Zero();
  Vec3 w = Vec3::Zero();
  Vec3 dw = Vec3::Zero();
  for (int j = 0; j < kArmJoints; ++j) {
    const ArmLink& link = arm.links[j];
    const Vec3 axis = frame * link.axis;
    dw += w.cross(axis * joints.rate[j]) + axis * joints.accel[j];
    w += axis * joints.rate[j];
    frame = frame * Eigen::AngleAxisd(joints.angle[j], link.axis).toRotationMatrix();
    const Vec3 r = frame * link.length;
    pos += r;
    vel += w.cross(r);
    acc += dw.cross(r) + w.cross(w.cross(r));
  }
  return EndEffectorState{pos, vel, acc, w};
}

CouplingSample coupling_from_arm(const LumpedArmParams& arm, const JointState& joints,
                                 const RigidBodyState& base, const QuadParams& quad) {
  CouplingSample out;
  if (arm.equivalent_mass == 0.0) return out;
  const EndEffectorState ee = forward_kinematics(arm, joints);
  const Vec3 g_body = base.R.matrix().transpose() * (quad.gravity * Vec3::UnitZ());
  out.delta_v = -(arm.equivalent_mass / quad.total_mass()) * (base.R * ee.acceleration);
  const Vec3 moment = ee.position.cross(arm.equivalent_mass * (g_body - ee.acceleration));
  out.delta_omega = quad.inertia.llt().solve(moment);
  return out;
}

void ExternalForceEvent::validate() const {
  if (!(stop > start) || !std::isfinite(start) || !std::isfinite(stop)) {
    throw Error(ErrorCode::kInvalidArgument, "external force window needs stop > start");
  }
  if (!force.allFinite() || !application_point.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "external force must be finite");
  }
}

CouplingSample external_force_coupling(const ExternalForceEvent& event,
                                       const RigidBodyState& base, const QuadParams& quad,
                                       double t) {
  CouplingSample out;
  if (t <= event.start || t >= event.stop) return out;
  const double up = (t - event.start) / kForceRampSeconds;
  const double down = (event.stop - t) / kForceRampSeconds;
  const double scale = std::clamp(std::min(up, down), 0.0, 1.0);
  const Vec3 force = scale * event.force;
  out.delta_v = base.R * force / quad.total_mass();
  out.delta_omega = quad.inertia.llt().solve(event.application_point.cross(force));
  return out;
}

ArmMotionStats arm_motion_stats(const ArmTrajectoryProfile& profile,
                                const LumpedArmParams& arm, double horizon, double step) {
  if (!(step > 0.0) || !(horizon >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "arm_motion_stats: bad grid");
  }
  ArmMotionStats stats;
  const auto n = static_cast<long>(std::floor(horizon / step + 1e-9));
  for (long k = 0; k <= n; ++k) {
    const EndEffectorState ee =
        forward_kinematics(arm, joint_state_at(profile, static_cast<double>(k) * step));
    stats.peak_speed = std::max(stats.peak_speed, ee.velocity.norm());
    stats.peak_acceleration = std::max(stats.peak_acceleration, ee.acceleration.norm());
    stats.peak_angular_rate = std::max(stats.peak_angular_rate, ee.angular_velocity.norm());
  }
  return stats;
}

namespace {

ArmTrajectoryProfile scaled(const ArmTrajectoryProfile& profile, double factor) {
  ArmTrajectoryProfile out = profile;
  for (JointSinusoid& s : out.joints) s.amplitude *= factor;
  return out;
}

}  // namespace

ArmTrajectoryProfile scale_profile_to_speed(const ArmTrajectoryProfile& profile,
                                            const LumpedArmParams& arm,
                                            double target_speed, double horizon,
                                            double step) {
  if (!(target_speed > 0.0)) {
    throw Error(ErrorCode::kConfigInvalid, "target end-effector speed must be > 0");
  }
  auto speed_at = [&](double factor) {
    return arm_motion_stats(scaled(profile, factor), arm, horizon, step).peak_speed;
  };
  double f0 = 1.0;
  double s0 = speed_at(f0);
  if (!(s0 > 0.0)) {
    throw Error(ErrorCode::kConfigInvalid, "arm profile has no motion to scale");
  }
  // Secant iteration on the amplitude factor, started from the linear guess.
  double factor = target_speed / s0;
  double speed = speed_at(factor);
  for (int iter = 0; iter < 40 && std::abs(speed - target_speed) > 1e-9 * target_speed;
       ++iter) {
    const double slope = (speed - s0) / (factor - f0);
    f0 = factor;
    s0 = speed;
    factor = slope > 0.0 ? factor + (target_speed - speed) / slope
                         : factor * target_speed / speed;
    speed = speed_at(factor);
  }
  if (!(std::abs(speed - target_speed) <= 1e-6 * target_speed)) {
    std::ostringstream os;
    os << "could not scale arm profile to " << target_speed << " m/s (reached " << speed
       << ")";
    throw Error(ErrorCode::kConfigInvalid, os.str());
  }
  return scaled(profile, factor);
}

}  // namespace ppcsim
