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

// Variable-gain extended state observers.
//
// For a scalar channel y1' = Delta + u with measured y1, the observer keeps
// an auxiliary state h and reports
//
//   e = y1 - h,   Delta_hat = alpha g(e) / eps,   h' = Delta_hat + u
//
// where g(e) = e (exp(e) + exp(-e)) / (w (exp(e) + exp(-e)) + d) has a low
// slope 2/(2w + d) near zero and approaches slope 1/w for large errors.

#ifndef PPCSIM_CORE_ESO_HPP_
#define PPCSIM_CORE_ESO_HPP_

#include <array>

#include "so3.hpp"

namespace ppcsim {

struct GainFunctionParams {
  double w = 0.5;
  double d = 5.0;
};

// Odd, |g(e)| <= |e| / w. Evaluated as e / (w + d sech(e) / 2), which stays
// finite for any finite e.
double gain_g(double e, const GainFunctionParams& params);

struct EsoParams {
  double alpha = 1.0;    // 1/s
  double epsilon = 0.5;  // (0, 1)
  GainFunctionParams gain;

  void validate() const;
};

class VariableGainEsoUnit {
 public:
  VariableGainEsoUnit() = default;
  explicit VariableGainEsoUnit(const EsoParams& params);

  // h(0) = y1(0); the first estimate is exactly zero.
  void initialize(double y1);

  // One explicit-Euler tick: advances h over the last interval using the
  // estimate and input held during that interval, then recomputes the
  // estimate from the fresh measurement. Throws NonFiniteStateError.
  double step(double y1, double u_held, double dt);

  double estimate() const { return estimate_; }
  double auxiliary_state() const { return h_; }
  double innovation() const { return e_; }
  const EsoParams& params() const { return params_; }

 private:
  EsoParams params_;
  double h_ = 0.0;
  double e_ = 0.0;
  double estimate_ = 0.0;
};

// One observer per axis.
class EsoTriplet {
 public:
  EsoTriplet() = default;
  explicit EsoTriplet(const std::array<EsoParams, 3>& params);

  void initialize(const Vec3& y1);
  Vec3 step(const Vec3& y1, const Vec3& u_held, double dt);
  Vec3 estimate() const;

  const VariableGainEsoUnit& unit(int axis) const { return units_[axis]; }

 private:
  std::array<VariableGainEsoUnit, 3> units_;
};

// Position channel: v' = u_v + Delta_v with u_v = g n - T R n / (m_B + m_R).
Vec3 position_eso_input(double thrust, const Rotation& attitude, double total_mass,
                        double gravity);
inline Vec3 position_eso_step(EsoTriplet& eso, const Vec3& velocity,
                              const Vec3& u_v, double dt) {
  return eso.step(velocity, u_v, dt);
}

// Attitude channel: w' = u_w + Delta_w with u_w = I^-1 (tau - w x I w).
Vec3 attitude_eso_input(const Vec3& torque, const Vec3& omega, const Mat3& inertia,
                        const Mat3& inertia_inv);
inline Vec3 attitude_eso_step(EsoTriplet& eso, const Vec3& omega,
                              const Vec3& u_omega, double dt) {
  return eso.step(omega, u_omega, dt);
}

}  // namespace ppcsim

#endif  // PPCSIM_CORE_ESO_HPP_
