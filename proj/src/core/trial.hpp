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

#ifndef PPCSIM_CORE_TRIAL_HPP_
#define PPCSIM_CORE_TRIAL_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"

namespace ppcsim {

inline constexpr int kCsvSchemaVersion = 1;

// One control tick. Errors and Delta are ground truth; the *_hat columns are
// what the controller used.
struct TickRow {
  double t = 0.0;
  Vec3 p = Vec3::Zero(), v = Vec3::Zero(), omega = Vec3::Zero();
  Eigen::Vector4d quat{1.0, 0.0, 0.0, 0.0};  // w, x, y, z of the base attitude
  Vec3 p_d = Vec3::Zero(), position_error = Vec3::Zero(), rho_p = Vec3::Zero(),
       beta_p = Vec3::Zero(), z_p = Vec3::Zero(), s_p = Vec3::Zero();
  Vec3 qv = Vec3::Zero(), rho_q = Vec3::Zero(), beta_q = Vec3::Zero(), z_q = Vec3::Zero(),
       s_q = Vec3::Zero();
  Vec3 delta_v = Vec3::Zero(), delta_v_hat = Vec3::Zero(), delta_v_effective = Vec3::Zero();
  Vec3 delta_omega = Vec3::Zero(), delta_omega_hat = Vec3::Zero();
  double thrust = 0.0;
  Vec3 torque = Vec3::Zero();
};

struct ArmMetadata {
  double scale = 0.0;               // amplitude factor applied to the profile
  ArmMotionStats stats;             // realized, over the trial horizon
  std::array<double, kArmJoints> phase_offsets{};
};

struct TrialRecord {
  std::string scenario;
  ControllerVariant variant = ControllerVariant::kProposed;
  std::uint64_t seed = 0;
  std::uint64_t config_hash = 0;
  double dt = 1e-3;
  double convergence_time = 0.0;
  Vec3 rho_p_inf = Vec3::Zero();  // opens the steady-state window
  std::optional<ArmMetadata> arm;
  std::optional<CBoundAudit> c_audit;
  // sup over t >= convergence_time of |Delta_eff - Delta_hat| (Euclidean).
  double delta_f_v = 0.0;
  double delta_f_omega = 0.0;
  std::vector<TickRow> rows;
};

struct TrialOptions {
  // Overrides the scenario's arm switch (used by ablation checks).
  std::optional<bool> arm_enabled;
};

// Deterministic in (config, scenario, variant, seed). Throws
// Error(kConfigInvalid) and NonFiniteStateError.
TrialRecord run_trial(const SimConfig& config, const std::string& scenario,
                      ControllerVariant variant, std::uint64_t seed,
                      const TrialOptions& options = {});

// c audit of the proposed controller at a scenario's noise-free initial
// state, as the first control tick would compute it. Never throws for an
// inadmissible c.
CBoundAudit audit_scenario(const SimConfig& config, const std::string& scenario);

// Resolves the per-seed arm profile (phase draw + speed calibration).
ArmTrajectoryProfile trial_arm_profile(const SimConfig& config, double horizon,
                                       std::uint64_t seed, ArmMetadata* meta);

std::vector<std::string> csv_header();
void write_csv(const TrialRecord& record, std::ostream& out);
// Reads a file written by write_csv. Throws Error(kIo) on malformed input.
TrialRecord read_csv(std::istream& in);

}  // namespace ppcsim

#endif  // PPCSIM_CORE_TRIAL_HPP_
