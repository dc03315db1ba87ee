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

#include "envelope.hpp"

#include <cmath>
#include <sstream>

#include "error.hpp"

namespace ppcsim {

void PerformanceEnvelope::validate() const {
  if (!(decay_rate > 0.0) || !std::isfinite(decay_rate)) {
    throw Error(ErrorCode::kInvalidArgument, "envelope decay rate must be > 0");
  }
  for (int i = 0; i < 3; ++i) {
    if (!(rho_inf[i] > 0.0) || !(rho0[i] > rho_inf[i]) || !std::isfinite(rho0[i])) {
      std::ostringstream os;
      os << "envelope axis " << i << " requires rho0 > rho_inf > 0 (got "
         << rho0[i] << ", " << rho_inf[i] << ")";
      throw Error(ErrorCode::kInvalidArgument, os.str());
    }
  }
}

Vec3 rho_at(const PerformanceEnvelope& env, double t) {
  if (t < 0.0) {
    throw Error(ErrorCode::kNegativeTime, "rho_at: negative time");
  }
  return (env.rho0 - env.rho_inf) * std::exp(-env.decay_rate * t) + env.rho_inf;
}

Vec3 rho_dot_at(const PerformanceEnvelope& env, double t) {
  if (t < 0.0) {
    throw Error(ErrorCode::kNegativeTime, "rho_dot_at: negative time");
  }
  return -env.decay_rate * (env.rho0 - env.rho_inf) * std::exp(-env.decay_rate * t);
}

PresetTrajectory PresetTrajectory::from_initial_error(const Vec3& error0,
                                                      const Vec3& error_rate0,
                                                      const Vec3& c,
                                                      double decay_rate) {
  if (!(decay_rate > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "preset trajectory needs l > 0");
  }
  if (!(c.minCoeff() > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "preset trajectory needs c > 0");
  }
  if (!error0.allFinite() || !error_rate0.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "preset trajectory seeded with non-finite error");
  }
  PresetTrajectory traj;
  traj.beta0_ = error0;
  traj.rate0_ = error_rate0;
  traj.b_ = decay_rate * error0 + error_rate0;
  traj.c_ = c;
  traj.l_ = decay_rate;
  return traj;
}

BetaSample PresetTrajectory::at(double t) const {
  // beta = E(t) A(t) with E = exp(-l t), A = beta0 + b/c (1 - exp(-c t)).
  // A' = b exp(-c t), A'' = -b c exp(-c t). A' - l A is regrouped around the
  // measured rate so that beta'(0) reproduces it bit for bit.
  const double e = std::exp(-l_ * t);
  BetaSample s;
  for (int i = 0; i < 3; ++i) {
    const double ec = std::exp(-c_[i] * t);
    const double rise = -std::expm1(-c_[i] * t);  // 1 - exp(-c t)
    const double a = beta0_[i] + b_[i] / c_[i] * rise;
    const double da = b_[i] * ec;
    const double dda = -b_[i] * c_[i] * ec;
    s.beta[i] = e * a;
    s.dbeta[i] = e * (rate0_[i] * ec - l_ * rise * (beta0_[i] + b_[i] / c_[i]));
    s.ddbeta[i] = e * (dda - 2.0 * l_ * da + l_ * l_ * a);
  }
  return s;
}

namespace {

CBoundReport c_bound(const PresetTrajectory& traj, const PerformanceEnvelope& env,
                     const Vec3& margin) {
  CBoundReport report;
  for (int i = 0; i < 3; ++i) {
    const double room = env.rho0[i] - std::abs(traj.beta0()[i]) - margin[i];
    if (!(room > 0.0)) {
      std::ostringstream os;
      os << "axis " << i << ": initial error " << traj.beta0()[i]
         << " leaves no room inside rho0 " << env.rho0[i] << " (margin "
         << margin[i] << ")";
      throw Error(ErrorCode::kInfeasibleEnvelope, os.str());
    }
    report.c_min[i] = std::abs(traj.b()[i]) / room;
    report.admissible[i] = traj.c()[i] > report.c_min[i];
  }
  return report;
}

}  // namespace

CBoundReport validate_c(const PresetTrajectory& traj, const PerformanceEnvelope& env,
                        const MarginConstants& margins) {
  CBoundReport report = c_bound(traj, env, margins.epsilon);
  for (int i = 0; i < 3; ++i) {
    const double eps = margins.epsilon[i];
    if (!(eps > 0.0) || !(eps < env.rho_inf[i])) {
      std::ostringstream os;
      os << "axis " << i << ": margin " << eps << " must lie in (0, rho_inf = "
         << env.rho_inf[i] << ")";
      throw Error(ErrorCode::kInvalidArgument, os.str());
    }
  }
  return report;
}

CBoundReport validate_c_with_deviation(const PresetTrajectory& traj,
                                const PerformanceEnvelope& env,
                                const Vec3& delta_over_gain) {
  if (!(delta_over_gain.minCoeff() >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "deviation radius must be >= 0");
  }
  CBoundReport report = c_bound(traj, env, delta_over_gain);
  for (int i = 0; i < 3; ++i) {
    if (!(delta_over_gain[i] < env.rho_inf[i])) report.admissible[i] = false;
  }
  return report;
}

ContainmentReport containment_check(const PresetTrajectory& traj,
                                    const PerformanceEnvelope& env,
                                    const MarginConstants& margins,
                                    const TimeGrid& grid) {
  if (!(grid.step > 0.0) || grid.step > 1e-3 + 1e-15) {
    throw Error(ErrorCode::kInvalidArgument, "containment grid must be <= 1 ms");
  }
  if (grid.horizon < 5.0 / env.decay_rate) {
    throw Error(ErrorCode::kInvalidArgument, "containment horizon must cover 5/l");
  }
  ContainmentReport report;
  const auto n = static_cast<long>(std::ceil(grid.horizon / grid.step));
  for (long k = 0; k <= n; ++k) {
    const double t = static_cast<double>(k) * grid.step;
    const Vec3 beta = traj.at(t).beta;
    const Vec3 bound = rho_at(env, t) - margins.epsilon;
    for (int i = 0; i < 3; ++i) {
      if (!(std::abs(beta[i]) < bound[i])) {
        report.contained = false;
        report.first_violation = ContainmentViolation{t, i, beta[i], bound[i]};
        return report;
      }
    }
  }
  return report;
}

}  // namespace ppcsim
