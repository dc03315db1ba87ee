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

#include "reference.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "error.hpp"

namespace ppcsim {

namespace {

constexpr std::array<std::pair<ReferenceKind, std::string_view>, 5> kNames{{
    {ReferenceKind::kHover, "hover"},
    {ReferenceKind::kSetpoint, "setpoint"},
    {ReferenceKind::kCircle, "circle"},
    {ReferenceKind::kFigureEight, "figure_eight"},
    {ReferenceKind::kCartPull, "cart_pull"},
}};

// Displacement, speed fraction and its rate for a smoothstep speed ramp of
// duration `ramp`, evaluated `u` seconds into it (clamped).
struct Ramp {
  double distance;  // in units of (speed * ramp)
  double speed;
  double accel;     // per second
};

Ramp smooth_ramp(double elapsed, double ramp) {
  const double u = std::clamp(elapsed / ramp, 0.0, 1.0);
  Ramp r;
  r.speed = u * u * (3.0 - 2.0 * u);
  r.accel = 6.0 * u * (1.0 - u) / ramp;
  r.distance = u * u * u - 0.5 * u * u * u * u;
  if (elapsed > ramp) r.distance += (elapsed - ramp) / ramp;
  return r;
}

}  // namespace

std::string_view reference_kind_name(ReferenceKind kind) {
  for (const auto& [k, name] : kNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<ReferenceKind> parse_reference_kind(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

void ReferenceSpec::validate() const {
  if (!start.allFinite() || !target.allFinite()) {
    throw Error(ErrorCode::kConfigInvalid, "reference points must be finite");
  }
  if (!(period > 0.0) || !(radius >= 0.0) || !(pull_ramp > 0.0) || !(lead_in >= 0.0) ||
      !(pull_stop >= pull_start + 2.0 * pull_ramp) || !(pull_start >= 0.0)) {
    throw Error(ErrorCode::kConfigInvalid, "reference timing parameters out of range");
  }
}

ReferenceSignal reference_at(const ReferenceSpec& spec, double t) {
  if (t < 0.0) throw Error(ErrorCode::kNegativeTime, "reference_at: negative time");
  ReferenceSignal ref;
  ref.p_d = spec.start;
  // Warped path time for the periodic references: tau(t), tau', tau''.
  double tau = t;
  double dtau = 1.0;
  double ddtau = 0.0;
  if (spec.lead_in > 0.0) {
    const Ramp r = smooth_ramp(t, spec.lead_in);
    tau = r.distance * spec.lead_in;
    dtau = r.speed;
    ddtau = r.accel;
  }
  switch (spec.kind) {
    case ReferenceKind::kHover:
      break;
    case ReferenceKind::kSetpoint:
      ref.p_d = spec.target;
      break;
    case ReferenceKind::kCircle: {
      // Starts at `start` and circles counter-clockwise about a centre
      // one radius behind it.
      const double w = 2.0 * std::numbers::pi / spec.period;
      const double c = std::cos(w * tau);
      const double s = std::sin(w * tau);
      const Vec3 centre = spec.start - Vec3(spec.radius, 0.0, 0.0);
      const Vec3 d1 = spec.radius * w * Vec3(-s, c, 0.0);
      const Vec3 d2 = -spec.radius * w * w * Vec3(c, s, 0.0);
      ref.p_d = centre + spec.radius * Vec3(c, s, 0.0);
      ref.dp_d = d1 * dtau;
      ref.ddp_d = d2 * dtau * dtau + d1 * ddtau;
      break;
    }
    case ReferenceKind::kFigureEight: {
      const double w = 2.0 * std::numbers::pi / spec.period;
      const double ax = spec.eight_x_amplitude;
      const double ay = spec.eight_y_amplitude;
      const Vec3 d1(2.0 * w * ax * std::cos(2.0 * w * tau), w * ay * std::cos(w * tau), 0.0);
      const Vec3 d2(-4.0 * w * w * ax * std::sin(2.0 * w * tau),
                    -w * w * ay * std::sin(w * tau), 0.0);
      ref.p_d = spec.start + Vec3(ax * std::sin(2.0 * w * tau), ay * std::sin(w * tau), 0.0);
      ref.dp_d = d1 * dtau;
      ref.ddp_d = d2 * dtau * dtau + d1 * ddtau;
      break;
    }
    case ReferenceKind::kCartPull: {
      if (t <= spec.pull_start) break;
      const double v = spec.pull_speed;
      const double ramp = spec.pull_ramp;
      const double decel_start = spec.pull_stop - ramp;
      const Ramp up = smooth_ramp(t - spec.pull_start, ramp);
      double dist = up.distance * v * ramp;
      double speed = up.speed * v;
      double accel = up.accel * v;
      if (t > decel_start) {
        // Subtracting a second ramp brings the speed back to zero.
        const Ramp down = smooth_ramp(t - decel_start, ramp);
        dist -= down.distance * v * ramp;
        speed -= down.speed * v;
        accel -= down.accel * v;
      }
      ref.p_d.y() += dist;
      ref.dp_d.y() = speed;
      ref.ddp_d.y() = accel;
      break;
    }
  }
  return ref;
}

}  // namespace ppcsim
