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

// Prescribed-performance position and attitude laws, the two ablations built
// from them, and a cascaded PID baseline.
//
// Position: z = p~ - beta, s = z' + Lambda z and
//   T_vec = m (g n + Delta_hat - p_d'' - beta'' + Lambda z' + K s),
// which gives s' = -K s + (Delta - Delta_hat) on the plant.
//
// Attitude: with R~ = R_d^T R, q~ its quaternion (q0 >= 0), Q = q0 I + [qv]x,
// w~ = w - R~^T w_d, z = qv - beta and s = z' + Lambda z,
//   tau = 2 I Q^-1 (-f - Q Delta_hat / 2 + beta'' - Lambda z' - K s)
// where f collects the drift of qv'' that does not depend on tau or Delta.

#ifndef PPCSIM_CORE_CONTROLLERS_HPP_
#define PPCSIM_CORE_CONTROLLERS_HPP_

#include <array>
#include <memory>
#include <optional>
#include <span>
#include <string_view>

#include "dynamics.hpp"
#include "envelope.hpp"
#include "eso.hpp"
#include "reference.hpp"

namespace ppcsim {

enum class ControllerVariant { kProposed, kBaselinePid, kNoEso, kNoPresetTrajectory };

inline constexpr std::array<ControllerVariant, 4> kAllVariants{
    ControllerVariant::kProposed, ControllerVariant::kNoPresetTrajectory,
    ControllerVariant::kNoEso, ControllerVariant::kBaselinePid};

std::string_view variant_name(ControllerVariant v);
std::optional<ControllerVariant> parse_variant(std::string_view name);

struct PositionCtlConfig {
  Vec3 lambda = Vec3::Constant(3.0);  // diagonal of Lambda_p, 1/s
  Vec3 k = Vec3::Constant(3.0);       // diagonal of K_p, 1/s
  PerformanceEnvelope envelope{Vec3::Constant(3.0), Vec3::Constant(0.05), 1.0};
  Vec3 c = Vec3::Constant(5.0);
  std::array<EsoParams, 3> eso{EsoParams{0.1, 0.5, {}}, EsoParams{0.1, 0.5, {}},
                               EsoParams{0.1, 0.5, {}}};
  // Assumed bound on the post-convergence estimation error, m/s^2. Sets the
  // margin used when auditing c against the envelope.
  double deviation_bound = 0.3;

  void validate() const;
  // delta / (Lambda_ii lambda_min(K)) per axis.
  Vec3 deviation_radius() const;
};

struct AttitudeCtlConfig {
  Vec3 lambda{14.0, 14.0, 10.0};
  Vec3 k{12.0, 12.0, 10.0};
  PerformanceEnvelope envelope{Vec3::Constant(0.4), Vec3::Constant(0.06), 1.0};
  Vec3 c = Vec3::Constant(5.0);
  std::array<EsoParams, 3> eso{EsoParams{1.0, 0.25, {}}, EsoParams{1.0, 0.25, {}},
                               EsoParams{1.0, 0.25, {}}};
  double deviation_bound = 1.5;  // rad/s^2

  void validate() const;
  Vec3 deviation_radius() const;
};

struct PositionOutput {
  Vec3 thrust_vector = Vec3::Zero();
  double thrust = 0.0;
  Vec3 error = Vec3::Zero();       // p - p_d
  Vec3 error_rate = Vec3::Zero();  // v - p_d'
  Vec3 z = Vec3::Zero();
  Vec3 dz = Vec3::Zero();
  Vec3 s = Vec3::Zero();
};

PositionOutput position_control(const RigidBodyState& state, const ReferenceSignal& ref,
                                const PositionCtlConfig& ctl, const Vec3& delta_hat,
                                const BetaSample& beta, const QuadParams& quad);

inline constexpr double kThrustDegeneracy = 1e-6;
inline constexpr double kYawDegeneracy = 1e-6;
inline constexpr double kQDeterminantGuard = 1e-6;

// Columns of the result are b1, b2, b3 with b3 along the thrust vector.
// Throws Error(kDegenerateThrust) or Error(kYawAlignmentSingularity).
Rotation desired_attitude(const Vec3& thrust_vector, double psi_d);

struct AttitudeError {
  ErrorQuaternion q;
  Vec3 omega_error = Vec3::Zero();  // w - R~^T w_d
  Vec3 dqv = Vec3::Zero();          // Q w~ / 2
  Mat3 rot_error = Mat3::Identity();
};

AttitudeError attitude_error(const RigidBodyState& state, const Rotation& desired,
                             const Vec3& omega_d);

struct AttitudeOutput {
  Vec3 torque = Vec3::Zero();
  AttitudeError error;
  Vec3 z = Vec3::Zero();
  Vec3 dz = Vec3::Zero();
  Vec3 s = Vec3::Zero();
};

// Throws Error(kNearSingularAttitude) when det Q = q0 falls below the guard.
AttitudeOutput attitude_control(const RigidBodyState& state, const Rotation& desired,
                                const Vec3& omega_d, const Vec3& domega_d,
                                const AttitudeCtlConfig& ctl, const Vec3& delta_hat,
                                const BetaSample& beta, const QuadParams& quad);

inline constexpr int kStencilPoints = 5;

// Backward five-point derivative of the newest sample; history is ordered
// oldest to newest and only its last five entries are used.
Mat3 backward_derivative(std::span<const Mat3> history, double dt);
Vec3 backward_derivative(std::span<const Vec3> history, double dt);

// w_d = vee(R_d^T R_d'), with R_d' from the stencil. Throws
// Error(kInsufficientHistory) with fewer than five samples.
Vec3 desired_angular_velocity(std::span<const Mat3> desired_history, double dt);

struct DesiredRate {
  Vec3 omega_d = Vec3::Zero();
  Vec3 domega_d = Vec3::Zero();
  bool omega_valid = false;
  bool domega_valid = false;
};

// Rolling estimator fed with one R_d per tick. Until enough samples exist the
// outputs fall back to zero; w_d' differentiates only valid w_d samples.
class DesiredRateEstimator {
 public:
  explicit DesiredRateEstimator(double dt);
  DesiredRate update(const Rotation& desired);

 private:
  double dt_;
  std::array<Mat3, kStencilPoints> rot_{};
  std::array<Vec3, kStencilPoints> rate_{};
  int rot_count_ = 0;
  int rate_count_ = 0;
};

// Everything a trial logs per tick, whatever the controller.
struct ControllerDiagnostics {
  Vec3 position_error = Vec3::Zero();
  Vec3 qv = Vec3::Zero();
  Vec3 beta_p = Vec3::Zero();
  Vec3 beta_q = Vec3::Zero();
  Vec3 z_p = Vec3::Zero();
  Vec3 s_p = Vec3::Zero();
  Vec3 z_q = Vec3::Zero();
  Vec3 s_q = Vec3::Zero();
  Vec3 delta_hat_v = Vec3::Zero();
  Vec3 delta_hat_omega = Vec3::Zero();
  Vec3 thrust_vector = Vec3::Zero();
  Vec3 omega_d = Vec3::Zero();
  Rotation desired;
};

struct PidGains {
  Vec3 pos_p{0.95, 0.95, 1.0};
  Vec3 vel_p{1.8, 1.8, 4.0};
  Vec3 vel_i{0.4, 0.4, 2.0};
  Vec3 vel_d{0.2, 0.2, 0.0};
  Vec3 att_p{6.5, 6.5, 2.8};
  Vec3 rate_p{15.0, 15.0, 6.0};
  Vec3 rate_i{3.0, 3.0, 1.0};
  Vec3 rate_d{0.15, 0.15, 0.0};
  double derivative_cutoff_hz = 20.0;
  double integrator_limit = 3.0;  // per-axis clamp on the integral state

  void validate() const;
};

struct ControllerConfig {
  PositionCtlConfig position;
  AttitudeCtlConfig attitude;
  PidGains pid;
  // Refuse to start when the preset trajectory's c fails the envelope audit.
  bool enforce_c_bound = true;
};

class Controller {
 public:
  virtual ~Controller() = default;
  // One control tick at time t from the measured state.
  virtual ControlCommand step(double t, const RigidBodyState& measured,
                              const ReferenceSignal& ref) = 0;
  virtual const ControllerDiagnostics& diagnostics() const = 0;
};

struct CBoundAudit {
  CBoundReport position;
  CBoundReport attitude;
};

class PrescribedPerformanceController final : public Controller {
 public:
  PrescribedPerformanceController(const ControllerConfig& config, const QuadParams& quad,
                                  double dt, bool use_eso, bool use_preset);

  ControlCommand step(double t, const RigidBodyState& measured,
                      const ReferenceSignal& ref) override;
  const ControllerDiagnostics& diagnostics() const override { return diag_; }

  // Filled on the first tick when the preset trajectory is active.
  const std::optional<CBoundAudit>& c_audit() const { return audit_; }

 private:
  ControllerConfig config_;
  QuadParams quad_;
  Mat3 inertia_inv_;
  double dt_;
  bool use_eso_;
  bool use_preset_;
  bool started_ = false;
  EsoTriplet eso_v_;
  EsoTriplet eso_w_;
  Vec3 u_v_ = Vec3::Zero();
  Vec3 u_w_ = Vec3::Zero();
  PresetTrajectory beta_p_;
  PresetTrajectory beta_q_;
  DesiredRateEstimator rates_;
  std::optional<CBoundAudit> audit_;
  ControllerDiagnostics diag_;
};

// Position P -> velocity PID -> attitude P -> rate PID.
class PidController final : public Controller {
 public:
  PidController(const ControllerConfig& config, const QuadParams& quad, double dt);

  ControlCommand step(double t, const RigidBodyState& measured,
                      const ReferenceSignal& ref) override;
  const ControllerDiagnostics& diagnostics() const override { return diag_; }

 private:
  ControllerConfig config_;
  QuadParams quad_;
  double dt_;
  bool started_ = false;
  Vec3 vel_integral_ = Vec3::Zero();
  Vec3 rate_integral_ = Vec3::Zero();
  Vec3 prev_vel_error_ = Vec3::Zero();
  Vec3 prev_omega_ = Vec3::Zero();
  Vec3 vel_error_rate_ = Vec3::Zero();
  Vec3 omega_rate_ = Vec3::Zero();
  ControllerDiagnostics diag_;
};

std::unique_ptr<Controller> make_controller(ControllerVariant variant,
                                            const ControllerConfig& config,
                                            const QuadParams& quad, double dt);

}  // namespace ppcsim

#endif  // PPCSIM_CORE_CONTROLLERS_HPP_
