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

// Performance envelopes rho(t) and the preset error trajectories beta(t)
// that the tracking error is steered along.
//
//   rho_i(t)  = (rho0_i - rhoinf_i) exp(-l t) + rhoinf_i
//   beta_i(t) = exp(-l t) * (beta0_i + b_i / c_i * (1 - exp(-c_i t)))
//
// with beta0 = e(0) and b = l e(0) + e'(0), which pins beta(0) = e(0) and
// beta'(0) = e'(0). The controllers consume beta'' every tick, so all
// derivatives are closed-form.

#ifndef PPCSIM_CORE_ENVELOPE_HPP_
#define PPCSIM_CORE_ENVELOPE_HPP_

#include <array>
#include <optional>

#include "so3.hpp"

namespace ppcsim {

struct PerformanceEnvelope {
  Vec3 rho0 = Vec3::Ones();
  Vec3 rho_inf = Vec3::Constant(0.1);
  double decay_rate = 1.0;  // l, 1/s

  // Throws Error(kInvalidArgument) unless rho0 > rho_inf > 0 and l > 0.
  void validate() const;
};

// Throws Error(kNegativeTime) for t < 0.
Vec3 rho_at(const PerformanceEnvelope& env, double t);
Vec3 rho_dot_at(const PerformanceEnvelope& env, double t);

struct BetaSample {
  Vec3 beta = Vec3::Zero();
  Vec3 dbeta = Vec3::Zero();
  Vec3 ddbeta = Vec3::Zero();
};

class PresetTrajectory {
 public:
  // Identically zero trajectory (used when the preset is disabled).
  PresetTrajectory() = default;

  // Seeds beta from the measured initial error and its rate. c must be
  // strictly positive per axis and l > 0.
  static PresetTrajectory from_initial_error(const Vec3& error0,
                                             const Vec3& error_rate0,
                                             const Vec3& c, double decay_rate);

  BetaSample at(double t) const;

  const Vec3& beta0() const { return beta0_; }
  const Vec3& b() const { return b_; }
  const Vec3& c() const { return c_; }
  double decay_rate() const { return l_; }

 private:
  Vec3 beta0_ = Vec3::Zero();
  Vec3 rate0_ = Vec3::Zero();
  Vec3 b_ = Vec3::Zero();
  Vec3 c_ = Vec3::Ones();
  double l_ = 1.0;
};

inline BetaSample beta_at(const PresetTrajectory& traj, double t) {
  return traj.at(t);
}

// Per-axis margins eps_i used by the containment check.
struct MarginConstants {
  Vec3 epsilon = Vec3::Zero();
};

struct CBoundReport {
  Vec3 c_min = Vec3::Zero();
  std::array<bool, 3> admissible{true, true, true};

  bool all_admissible() const {
    return admissible[0] && admissible[1] && admissible[2];
  }
};

// Lower bound c_i^min = |b_i| / (rho0_i - |beta0_i| - eps_i) for each axis;
// admissible[i] is true when the trajectory's c_i exceeds it strictly.
// Throws Error(kInfeasibleEnvelope) when the denominator is not positive and
// Error(kInvalidArgument) when eps_i is not in (0, rho_inf_i).
CBoundReport validate_c(const PresetTrajectory& traj,
                        const PerformanceEnvelope& env,
                        const MarginConstants& margins);

// Same bound with eps replaced by delta_f / ([Lambda]_ii lambda_min(K)), the
// deviation radius left by the sliding-mode controller. Axes where that
// radius reaches rho_inf_i are reported as inadmissible.
CBoundReport validate_c_with_deviation(const PresetTrajectory& traj,
                                const PerformanceEnvelope& env,
                                const Vec3& delta_over_gain);

struct TimeGrid {
  double step = 1e-3;
  double horizon = 5.0;
};

struct ContainmentViolation {
  double t = 0.0;
  int axis = 0;
  double beta = 0.0;
  double bound = 0.0;  // rho_i(t) - eps_i
};

struct ContainmentReport {
  bool contained = true;
  std::optional<ContainmentViolation> first_violation;
};

// Checks |beta_i(t)| < rho_i(t) - eps_i on every grid point. The grid must be
// no coarser than 1 ms and span at least 5/l.
ContainmentReport containment_check(const PresetTrajectory& traj,
                                    const PerformanceEnvelope& env,
                                    const MarginConstants& margins,
                                    const TimeGrid& grid);

}  // namespace ppcsim

#endif  // PPCSIM_CORE_ENVELOPE_HPP_
