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

#include "controllers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "error.hpp"

namespace ppcsim {

namespace {

constexpr std::array<std::pair<ControllerVariant, std::string_view>, 4> kVariantNames{{
    {ControllerVariant::kProposed, "proposed"},
    {ControllerVariant::kBaselinePid, "pid"},
    {ControllerVariant::kNoEso, "no_eso"},
    {ControllerVariant::kNoPresetTrajectory, "no_preset"},
}};

void require_positive(const Vec3& v, const char* what) {
  if (!v.allFinite() || !(v.minCoeff() > 0.0)) {
    std::ostringstream os;
    os << what << " must be positive on every axis";
    throw Error(ErrorCode::kConfigInvalid, os.str());
  }
}

Vec3 radius(const Vec3& lambda, const Vec3& k, double delta) {
  return Vec3::Constant(delta / k.minCoeff()).cwiseQuotient(lambda);
}

}  // namespace

std::string_view variant_name(ControllerVariant v) {
  for (const auto& [k, name] : kVariantNames) {
    if (k == v) return name;
  }
  return "unknown";
}

std::optional<ControllerVariant> parse_variant(std::string_view name) {
  for (const auto& [k, n] : kVariantNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

void PositionCtlConfig::validate() const {
  require_positive(lambda, "position Lambda");
  require_positive(k, "position K");
  require_positive(c, "position c");
  envelope.validate();
  for (const EsoParams& p : eso) p.validate();
  if (!(deviation_bound >= 0.0)) {
    throw Error(ErrorCode::kConfigInvalid, "position deviation bound must be >= 0");
  }
}

Vec3 PositionCtlConfig::deviation_radius() const {
  return radius(lambda, k, deviation_bound);
}

void AttitudeCtlConfig::validate() const {
  require_positive(lambda, "attitude Lambda");
  require_positive(k, "attitude K");
  require_positive(c, "attitude c");
  envelope.validate();
  if (!(envelope.rho0.maxCoeff() <= 1.0)) {
    throw Error(ErrorCode::kConfigInvalid, "attitude envelope must lie within the unit ball");
  }
  for (const EsoParams& p : eso) p.validate();
  if (!(deviation_bound >= 0.0)) {
    throw Error(ErrorCode::kConfigInvalid, "attitude deviation bound must be >= 0");
  }
}

Vec3 AttitudeCtlConfig::deviation_radius() const {
  return radius(lambda, k, deviation_bound);
}

PositionOutput position_control(const RigidBodyState& state, const ReferenceSignal& ref,
                                const PositionCtlConfig& ctl, const Vec3& delta_hat,
                                const BetaSample& beta, const QuadParams& quad) {
  PositionOutput out;
  out.error = state.p - ref.p_d;
  out.error_rate = state.v - ref.dp_d;
  out.z = out.error - beta.beta;
  out.dz = out.error_rate - beta.dbeta;
  out.s = out.dz + ctl.lambda.cwiseProduct(out.z);
  const Vec3 accel = quad.gravity * Vec3::UnitZ() + delta_hat - ref.ddp_d - beta.ddbeta +
                     ctl.lambda.cwiseProduct(out.dz) + ctl.k.cwiseProduct(out.s);
  out.thrust_vector = quad.total_mass() * accel;
  out.thrust = out.thrust_vector.norm();
  return out;
}

Rotation desired_attitude(const Vec3& thrust_vector, double psi_d) {
  const double norm = thrust_vector.norm();
  if (!(norm > kThrustDegeneracy)) {
    throw Error(ErrorCode::kDegenerateThrust, "thrust vector too small to define b3");
  }
  const Vec3 b3 = thrust_vector / norm;
  const Vec3 heading(std::cos(psi_d), std::sin(psi_d), 0.0);
  const Vec3 cross = b3.cross(heading);
  const double cross_norm = cross.norm();
  if (!(cross_norm > kYawDegeneracy)) {
    throw Error(ErrorCode::kYawAlignmentSingularity, "thrust direction parallel to heading");
  }
  const Vec3 b2 = cross / cross_norm;
  const Vec3 b1 = b2.cross(b3);
  Mat3 m;
  m.col(0) = b1;
  m.col(1) = b2;
  m.col(2) = b3;
  return Rotation::from_matrix(m);
}

AttitudeError attitude_error(const RigidBodyState& state, const Rotation& desired,
                             const Vec3& omega_d) {
  AttitudeError err;
  const Rotation rot = desired.transpose() * state.R;
  err.rot_error = rot.matrix();
  err.q = error_quaternion(rot);
  err.omega_error = state.omega - err.rot_error.transpose() * omega_d;
  err.dqv = 0.5 * (q_matrix(err.q) * err.omega_error);
  return err;
}

AttitudeOutput attitude_control(const RigidBodyState& state, const Rotation& desired,
                                const Vec3& omega_d, const Vec3& domega_d,
                                const AttitudeCtlConfig& ctl, const Vec3& delta_hat,
                                const BetaSample& beta, const QuadParams& quad) {
  AttitudeOutput out;
  out.error = attitude_error(state, desired, omega_d);
  const double q0 = out.error.q.q0;
  const Vec3& qv = out.error.q.qv;
  const double det = q0 * (q0 * q0 + qv.squaredNorm());
  if (!(det > kQDeterminantGuard)) {
    throw Error(ErrorCode::kNearSingularAttitude, "Q is not safely invertible");
  }
  const Mat3 q_mat = q_matrix(out.error.q);
  const Vec3& w_err = out.error.omega_error;
  const double dq0 = -0.5 * qv.dot(w_err);
  const Mat3 dq_mat = dq0 * Mat3::Identity() + hat(out.error.dqv);

  out.z = qv - beta.beta;
  out.dz = out.error.dqv - beta.dbeta;
  out.s = out.dz + ctl.lambda.cwiseProduct(out.z);

  const Mat3 rt = out.error.rot_error.transpose();
  const Mat3 inertia_inv = quad.inertia.inverse();
  const Vec3 gyro = inertia_inv * state.omega.cross(quad.inertia * state.omega);
  const Vec3 drift = 0.5 * (dq_mat * w_err) - 0.5 * (q_mat * gyro) +
                     0.5 * (q_mat * w_err.cross(rt * omega_d)) -
                     0.5 * (q_mat * (rt * domega_d));
  const Vec3 inner = -drift - 0.5 * (q_mat * delta_hat) + beta.ddbeta -
                     ctl.lambda.cwiseProduct(out.dz) - ctl.k.cwiseProduct(out.s);
  // Closed-form adjugate: Q^-1 = (q0^2 I + qv qv^T - q0 [qv]x) / det.
  const Mat3 q_inv =
      (q0 * q0 * Mat3::Identity() + qv * qv.transpose() - q0 * hat(qv)) / det;
  out.torque = 2.0 * (quad.inertia * (q_inv * inner));
  return out;
}

Mat3 backward_derivative(std::span<const Mat3> history, double dt) {
  const std::size_t n = history.size();
  if (n < kStencilPoints) {
    throw Error(ErrorCode::kInsufficientHistory, "five samples needed for the stencil");
  }
  return (25.0 * history[n - 1] - 48.0 * history[n - 2] + 36.0 * history[n - 3] -
          16.0 * history[n - 4] + 3.0 * history[n - 5]) /
         (12.0 * dt);
}

Vec3 backward_derivative(std::span<const Vec3> history, double dt) {
  const std::size_t n = history.size();
  if (n < kStencilPoints) {
    throw Error(ErrorCode::kInsufficientHistory, "five samples needed for the stencil");
  }
  return (25.0 * history[n - 1] - 48.0 * history[n - 2] + 36.0 * history[n - 3] -
          16.0 * history[n - 4] + 3.0 * history[n - 5]) /
         (12.0 * dt);
}

Vec3 desired_angular_velocity(std::span<const Mat3> desired_history, double dt) {
  const Mat3 rate = backward_derivative(desired_history, dt);
  return vee_skew_part(desired_history.back().transpose() * rate);
}

DesiredRateEstimator::DesiredRateEstimator(double dt) : dt_(dt) {
  if (!(dt > 0.0)) throw Error(ErrorCode::kInvalidArgument, "estimator dt must be > 0");
}

DesiredRate DesiredRateEstimator::update(const Rotation& desired) {
  std::rotate(rot_.begin(), rot_.begin() + 1, rot_.end());
  rot_.back() = desired.matrix();
  rot_count_ = std::min(rot_count_ + 1, kStencilPoints);
  DesiredRate out;
  if (rot_count_ < kStencilPoints) return out;
  out.omega_d = desired_angular_velocity(rot_, dt_);
  out.omega_valid = true;
  std::rotate(rate_.begin(), rate_.begin() + 1, rate_.end());
  rate_.back() = out.omega_d;
  rate_count_ = std::min(rate_count_ + 1, kStencilPoints);
  if (rate_count_ < kStencilPoints) return out;
  out.domega_d = backward_derivative(std::span<const Vec3>(rate_), dt_);
  out.domega_valid = true;
  return out;
}

// ---------------------------------------------------------------------------

PrescribedPerformanceController::PrescribedPerformanceController(
    const ControllerConfig& config, const QuadParams& quad, double dt, bool use_eso,
    bool use_preset)
    : config_(config),
      quad_(quad),
      inertia_inv_(quad.inertia.inverse()),
      dt_(dt),
      use_eso_(use_eso),
      use_preset_(use_preset),
      eso_v_(config.position.eso),
      eso_w_(config.attitude.eso),
      rates_(dt) {
  config_.position.validate();
  config_.attitude.validate();
  quad_.validate();
}

ControlCommand PrescribedPerformanceController::step(double t, const RigidBodyState& measured,
                                                     const ReferenceSignal& ref) {
  if (!started_) {
    eso_v_.initialize(measured.v);
    eso_w_.initialize(measured.omega);
    if (use_preset_) {
      beta_p_ = PresetTrajectory::from_initial_error(
          measured.p - ref.p_d, measured.v - ref.dp_d, config_.position.c,
          config_.position.envelope.decay_rate);
    }
  } else {
    try {
      eso_v_.step(measured.v, u_v_, dt_);
      eso_w_.step(measured.omega, u_w_, dt_);
    } catch (const NonFiniteStateError& e) {
      throw NonFiniteStateError(t, e.what());
    }
  }
  const Vec3 dhat_v = use_eso_ ? eso_v_.estimate() : Vec3::Zero();
  const Vec3 dhat_w = use_eso_ ? eso_w_.estimate() : Vec3::Zero();

  const BetaSample bp = beta_p_.at(t);
  const PositionOutput pos =
      position_control(measured, ref, config_.position, dhat_v, bp, quad_);
  const Rotation desired = desired_attitude(pos.thrust_vector, ref.psi_d);
  const DesiredRate rate = rates_.update(desired);

  if (!started_ && use_preset_) {
    const AttitudeError e0 = attitude_error(measured, desired, rate.omega_d);
    beta_q_ = PresetTrajectory::from_initial_error(e0.q.qv, e0.dqv, config_.attitude.c,
                                                   config_.attitude.envelope.decay_rate);
    CBoundAudit audit;
    audit.position = validate_c_with_deviation(beta_p_, config_.position.envelope,
                                        config_.position.deviation_radius());
    audit.attitude = validate_c_with_deviation(beta_q_, config_.attitude.envelope,
                                        config_.attitude.deviation_radius());
    audit_ = audit;
    if (config_.enforce_c_bound &&
        !(audit.position.all_admissible() && audit.attitude.all_admissible())) {
      std::ostringstream os;
      os << "preset trajectory c below its bound (position c_min "
         << audit.position.c_min.transpose() << ", attitude c_min "
         << audit.attitude.c_min.transpose() << ")";
      throw Error(ErrorCode::kInfeasibleEnvelope, os.str());
    }
  }
  started_ = true;

  const BetaSample bq = beta_q_.at(t);
  const AttitudeOutput att = attitude_control(measured, desired, rate.omega_d,
                                              rate.domega_d, config_.attitude, dhat_w, bq,
                                              quad_);

  ControlCommand cmd{pos.thrust, att.torque};
  u_v_ = position_eso_input(cmd.thrust, measured.R, quad_.total_mass(), quad_.gravity);
  u_w_ = attitude_eso_input(cmd.torque, measured.omega, quad_.inertia, inertia_inv_);

  diag_.position_error = pos.error;
  diag_.qv = att.error.q.qv;
  diag_.beta_p = bp.beta;
  diag_.beta_q = bq.beta;
  diag_.z_p = pos.z;
  diag_.s_p = pos.s;
  diag_.z_q = att.z;
  diag_.s_q = att.s;
  diag_.delta_hat_v = dhat_v;
  diag_.delta_hat_omega = dhat_w;
  diag_.thrust_vector = pos.thrust_vector;
  diag_.omega_d = rate.omega_d;
  diag_.desired = desired;
  return cmd;
}

// ---------------------------------------------------------------------------

void PidGains::validate() const {
  for (const Vec3* v : {&pos_p, &vel_p, &att_p, &rate_p}) require_positive(*v, "PID gain");
  for (const Vec3* v : {&vel_i, &vel_d, &rate_i, &rate_d}) {
    if (!v->allFinite() || v->minCoeff() < 0.0) {
      throw Error(ErrorCode::kConfigInvalid, "PID gains must be >= 0");
    }
  }
  if (!(derivative_cutoff_hz > 0.0) || !(integrator_limit > 0.0)) {
    throw Error(ErrorCode::kConfigInvalid, "PID filter/limit must be > 0");
  }
}

PidController::PidController(const ControllerConfig& config, const QuadParams& quad,
                             double dt)
    : config_(config), quad_(quad), dt_(dt) {
  config_.pid.validate();
  config_.attitude.validate();
  quad_.validate();
  if (!(dt > 0.0)) throw Error(ErrorCode::kInvalidArgument, "PID dt must be > 0");
}

ControlCommand PidController::step(double t, const RigidBodyState& measured,
                                   const ReferenceSignal& ref) {
  (void)t;
  const PidGains& g = config_.pid;
  const double lim = g.integrator_limit;
  const double tc = 1.0 / (2.0 * std::numbers::pi * g.derivative_cutoff_hz);
  const double blend = dt_ / (dt_ + tc);

  const Vec3 vel_sp = ref.dp_d + g.pos_p.cwiseProduct(ref.p_d - measured.p);
  const Vec3 vel_err = vel_sp - measured.v;
  if (started_) {
    vel_error_rate_ += blend * ((vel_err - prev_vel_error_) / dt_ - vel_error_rate_);
    omega_rate_ += blend * ((measured.omega - prev_omega_) / dt_ - omega_rate_);
  }
  vel_integral_ = (vel_integral_ + dt_ * vel_err).cwiseMax(-lim).cwiseMin(lim);
  const Vec3 accel_cmd = ref.ddp_d + g.vel_p.cwiseProduct(vel_err) +
                         g.vel_i.cwiseProduct(vel_integral_) +
                         g.vel_d.cwiseProduct(vel_error_rate_);
  const Vec3 thrust_vector =
      quad_.total_mass() * (quad_.gravity * Vec3::UnitZ() - accel_cmd);
  const Rotation desired = desired_attitude(thrust_vector, ref.psi_d);

  // Error rotation R_d^T R; the body rotation that reaches R_d has the
  // opposite vector part.
  const ErrorQuaternion q = error_quaternion(desired.transpose() * measured.R);
  const Vec3 rate_sp = -2.0 * g.att_p.cwiseProduct(q.qv);
  const Vec3 rate_err = rate_sp - measured.omega;
  rate_integral_ = (rate_integral_ + dt_ * rate_err).cwiseMax(-lim).cwiseMin(lim);
  const Vec3 ang_accel = g.rate_p.cwiseProduct(rate_err) +
                         g.rate_i.cwiseProduct(rate_integral_) -
                         g.rate_d.cwiseProduct(omega_rate_);
  const Vec3 torque = quad_.inertia * ang_accel +
                      measured.omega.cross(quad_.inertia * measured.omega);

  prev_vel_error_ = vel_err;
  prev_omega_ = measured.omega;
  started_ = true;

  diag_ = ControllerDiagnostics{};
  diag_.position_error = measured.p - ref.p_d;
  diag_.qv = q.qv;
  diag_.z_p = diag_.position_error;
  diag_.z_q = q.qv;
  diag_.thrust_vector = thrust_vector;
  diag_.desired = desired;
  return ControlCommand{thrust_vector.norm(), torque};
}

std::unique_ptr<Controller> make_controller(ControllerVariant variant,
                                            const ControllerConfig& config,
                                            const QuadParams& quad, double dt) {
  switch (variant) {
    case ControllerVariant::kProposed:
      return std::make_unique<PrescribedPerformanceController>(config, quad, dt, true, true);
    case ControllerVariant::kNoEso:
      return std::make_unique<PrescribedPerformanceController>(config, quad, dt, false, true);
    case ControllerVariant::kNoPresetTrajectory:
      return std::make_unique<PrescribedPerformanceController>(config, quad, dt, true, false);
    case ControllerVariant::kBaselinePid:
      return std::make_unique<PidController>(config, quad, dt);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown controller variant");
}

}  // namespace ppcsim
