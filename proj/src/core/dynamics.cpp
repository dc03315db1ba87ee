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

#include "dynamics.hpp"

#include <cmath>
#include <sstream>

#include "error.hpp"

namespace ppcsim {

void QuadParams::validate() const {
  if (!(base_mass > 0.0) || !(arm_mass >= 0.0) || !(gravity >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "vehicle masses/gravity out of range");
  }
  if (!inertia.allFinite() || (inertia - inertia.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw Error(ErrorCode::kInvalidArgument, "inertia must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Mat3> eig(inertia);
  if (!(eig.eigenvalues().minCoeff() > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "inertia must be positive-definite");
  }
}

bool RigidBodyState::all_finite() const {
  return p.allFinite() && v.allFinite() && R.matrix().allFinite() && omega.allFinite();
}

StateDerivative derivative(const RigidBodyState& state, const ControlCommand& cmd,
                           const CouplingSample& coupling, const QuadParams& params) {
  const Vec3 n = Vec3::UnitZ();
  StateDerivative d;
  d.dp = state.v;
  d.dv = params.gravity * n - cmd.thrust * (state.R * n) / params.total_mass() +
         coupling.delta_v;
  d.dR = state.R.matrix() * hat(state.omega);
  const Vec3 gyro = state.omega.cross(params.inertia * state.omega);
  d.domega = params.inertia.llt().solve(cmd.torque - gyro) + coupling.delta_omega;
  return d;
}

namespace {

// Stage state for RK4. The rotation is deliberately not re-projected inside
// the stages; only the accepted step is.
struct Flat {
  Vec3 p, v, omega;
  Mat3 R;
};

Flat advance(const RigidBodyState& s, const StateDerivative& d, double h) {
  return Flat{s.p + h * d.dp, s.v + h * d.dv, s.omega + h * d.domega,
              s.R.matrix() + h * d.dR};
}

}  // namespace

RigidBodyState rk4_step(const RigidBodyState& state, const ControlCommand& cmd,
                        const CouplingFn& coupling, double t, double dt,
                        const QuadParams& params) {
  if (!(dt > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "rk4_step: dt must be > 0");
  }
  // Stage states carry an unprojected R; derivative() only multiplies by it.
  auto eval = [&](double ts, const Flat& f) {
    RigidBodyState s;
    s.p = f.p;
    s.v = f.v;
    s.omega = f.omega;
    s.R = Rotation::orthonormalized(f.R);
    const CouplingSample c = coupling ? coupling(ts, s) : CouplingSample{};
    StateDerivative d = derivative(s, cmd, c, params);
    // Keep R' consistent with the unprojected stage matrix.
    d.dR = f.R * hat(f.omega);
    d.dv = params.gravity * Vec3::UnitZ() -
           cmd.thrust * (f.R * Vec3::UnitZ()) / params.total_mass() + c.delta_v;
    return d;
  };

  const Flat f1{state.p, state.v, state.omega, state.R.matrix()};
  const StateDerivative k1 = eval(t, f1);
  const StateDerivative k2 = eval(t + 0.5 * dt, advance(state, k1, 0.5 * dt));
  const StateDerivative k3 = eval(t + 0.5 * dt, advance(state, k2, 0.5 * dt));
  const StateDerivative k4 = eval(t + dt, advance(state, k3, dt));

  const double w = dt / 6.0;
  RigidBodyState next;
  next.p = state.p + w * (k1.dp + 2.0 * k2.dp + 2.0 * k3.dp + k4.dp);
  next.v = state.v + w * (k1.dv + 2.0 * k2.dv + 2.0 * k3.dv + k4.dv);
  next.omega = state.omega + w * (k1.domega + 2.0 * k2.domega + 2.0 * k3.domega + k4.domega);
  const Mat3 r = state.R.matrix() + w * (k1.dR + 2.0 * k2.dR + 2.0 * k3.dR + k4.dR);
  if (!next.p.allFinite() || !next.v.allFinite() || !next.omega.allFinite() ||
      !r.allFinite()) {
    std::ostringstream os;
    os << "plant state became non-finite at t = " << t + dt;
    throw NonFiniteStateError(t + dt, os.str());
  }
  next.R = Rotation::orthonormalized(r);
  return next;
}

RigidBodyState add_measurement_noise(const RigidBodyState& state,
                                     const NoiseConfig& noise, std::mt19937_64& rng) {
  if (noise.velocity_std == 0.0 && noise.angular_velocity_std == 0.0) return state;
  if (noise.velocity_std < 0.0 || noise.angular_velocity_std < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "noise std must be >= 0");
  }
  std::normal_distribution<double> unit(0.0, 1.0);
  RigidBodyState out = state;
  for (int i = 0; i < 3; ++i) out.v[i] += noise.velocity_std * unit(rng);
  for (int i = 0; i < 3; ++i) out.omega[i] += noise.angular_velocity_std * unit(rng);
  return out;
}

}  // namespace ppcsim
