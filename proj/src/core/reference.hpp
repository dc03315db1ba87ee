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

#ifndef PPCSIM_CORE_REFERENCE_HPP_
#define PPCSIM_CORE_REFERENCE_HPP_

#include <optional>
#include <string_view>

#include "so3.hpp"

namespace ppcsim {

struct ReferenceSignal {
  Vec3 p_d = Vec3::Zero();
  Vec3 dp_d = Vec3::Zero();
  Vec3 ddp_d = Vec3::Zero();
  double psi_d = 0.0;
  double dpsi_d = 0.0;
};

enum class ReferenceKind { kHover, kSetpoint, kCircle, kFigureEight, kCartPull };

std::string_view reference_kind_name(ReferenceKind kind);
std::optional<ReferenceKind> parse_reference_kind(std::string_view name);

// Parameters for all generators; each kind reads the fields it needs.
struct ReferenceSpec {
  ReferenceKind kind = ReferenceKind::kHover;
  Vec3 start = Vec3(0.0, 0.0, -1.5);   // hover point, circle/eight start, m
  Vec3 target = Vec3(0.8, -0.8, -0.7); // setpoint, m
  double radius = 1.5;                 // circle, m
  double period = 16.0;                // circle and figure-eight, s
  double eight_x_amplitude = 0.65;     // m
  double eight_y_amplitude = 1.3;      // m
  // Circle and figure-eight: the path parameter accelerates from rest with a
  // smoothstep speed ramp of this length, so the vehicle starts at hover.
  // Zero disables the lead-in.
  double lead_in = 2.0;                // s
  // Cart pull: hover, then translate along y at pull_speed between
  // pull_start and pull_stop with smoothstep speed ramps.
  double pull_start = 5.0;
  double pull_stop = 17.0;
  double pull_speed = -0.25;           // m/s
  double pull_ramp = 1.0;              // s

  void validate() const;
};

// Analytic position, velocity and acceleration. Yaw is held at zero.
ReferenceSignal reference_at(const ReferenceSpec& spec, double t);

}  // namespace ppcsim

#endif  // PPCSIM_CORE_REFERENCE_HPP_
