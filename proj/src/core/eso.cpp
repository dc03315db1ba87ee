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

#include "eso.hpp"

#include <cmath>
#include <sstream>

#include "error.hpp"

namespace ppcsim {

double gain_g(double e, const GainFunctionParams& params) {
  // 1 / (exp(e) + exp(-e)) = exp(-|e|) / (1 + exp(-2|e|)); no overflow.
  const double a = std::exp(-std::abs(e));
  const double inv_s = a / (1.0 + a * a);
  return e / (params.w + params.d * inv_s);
}

void EsoParams::validate() const {
  if (!(alpha > 0.0) || !(epsilon > 0.0 && epsilon < 1.0) || !(gain.w > 0.0) ||
      !(gain.d > 0.0)) {
    std::ostringstream os;
    os << "ESO parameters out of range (alpha " << alpha << ", epsilon " << epsilon
       << ", w " << gain.w << ", d " << gain.d << ")";
    throw Error(ErrorCode::kInvalidArgument, os.str());
  }
}

VariableGainEsoUnit::VariableGainEsoUnit(const EsoParams& params) : params_(params) {
  params_.validate();
}

void VariableGainEsoUnit::initialize(double y1) {
  h_ = y1;
  e_ = 0.0;
  estimate_ = 0.0;
}

double VariableGainEsoUnit::step(double y1, double u_held, double dt) {
  h_ += dt * (estimate_ + u_held);
  e_ = y1 - h_;
  estimate_ = params_.alpha * gain_g(e_, params_.gain) / params_.epsilon;
  if (!std::isfinite(h_) || !std::isfinite(estimate_)) {
    throw NonFiniteStateError(0.0, "ESO state or estimate is not finite");
  }
  return estimate_;
}

EsoTriplet::EsoTriplet(const std::array<EsoParams, 3>& params)
    : units_{VariableGainEsoUnit(params[0]), VariableGainEsoUnit(params[1]),
             VariableGainEsoUnit(params[2])} {}

void EsoTriplet::initialize(const Vec3& y1) {
  for (int i = 0; i < 3; ++i) units_[i].initialize(y1[i]);
}

Vec3 EsoTriplet::step(const Vec3& y1, const Vec3& u_held, double dt) {
  Vec3 out;
  for (int i = 0; i < 3; ++i) out[i] = units_[i].step(y1[i], u_held[i], dt);
  return out;
}

Vec3 EsoTriplet::estimate() const {
  return Vec3(units_[0].estimate(), units_[1].estimate(), units_[2].estimate());
}

Vec3 position_eso_input(double thrust, const Rotation& attitude, double total_mass,
                        double gravity) {
  return gravity * Vec3::UnitZ() - thrust * (attitude * Vec3::UnitZ()) / total_mass;
}

Vec3 attitude_eso_input(const Vec3& torque, const Vec3& omega, const Mat3& inertia,
                        const Mat3& inertia_inv) {
  return inertia_inv * (torque - omega.cross(inertia * omega));
}

}  // namespace ppcsim
