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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "dynamics.hpp"
#include "error.hpp"

namespace ppcsim {
namespace {

QuadParams free_body() {
  QuadParams q;
  q.gravity = 0.0;
  q.inertia = Vec3(0.16, 0.22, 0.28).asDiagonal();
  return q;
}

// Inertial angular momentum drift after integrating a torque-free body.
double momentum_drift(double dt, double horizon) {
  const QuadParams q = free_body();
  RigidBodyState s;
  s.omega = Vec3(3.0, 1.0, 2.0);
  const Vec3 l0 = s.R.matrix() * q.inertia * s.omega;
  const int n = static_cast<int>(std::lround(horizon / dt));
  for (int k = 0; k < n; ++k) s = rk4_step(s, {}, nullptr, k * dt, dt, q);
  return (s.R.matrix() * q.inertia * s.omega - l0).norm();
}

TEST(Derivative, HoverIsEquilibrium) {
  const QuadParams q;
  EXPECT_NEAR(q.total_mass() * q.gravity, 75.73, 5e-3);
  RigidBodyState s;
  const StateDerivative d =
      derivative(s, ControlCommand{q.total_mass() * q.gravity, Vec3::Zero()}, {}, q);
  EXPECT_LT(d.dv.norm(), 1e-14);
  EXPECT_EQ(d.dp, Vec3::Zero());
  EXPECT_EQ(d.domega, Vec3::Zero());
}

TEST(Derivative, ZeroThrustIsFreeFallDown) {
  const QuadParams q;
  const StateDerivative d = derivative(RigidBodyState{}, {}, {}, q);
  EXPECT_EQ(d.dv, Vec3(0, 0, 9.81));
}

TEST(Derivative, PrincipalAxisSpinHasNoGyroscopicTerm) {
  const QuadParams q;
  for (const Vec3& axis : {Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()}) {
    RigidBodyState s;
    s.omega = 4.0 * axis;
    EXPECT_EQ(derivative(s, {}, {}, q).domega, Vec3::Zero());
  }
}

TEST(Derivative, CouplingEntersAsAcceleration) {
  const QuadParams q;
  const CouplingSample c{Vec3(0.5, -0.2, 0.1), Vec3(1.0, 2.0, 3.0)};
  const StateDerivative d = derivative(RigidBodyState{}, {}, c, q);
  EXPECT_EQ(d.dv, Vec3(0.5, -0.2, 9.81 + 0.1));
  EXPECT_EQ(d.domega, c.delta_omega);
}

// Textbook quadrotor without arm terms, written independently.
TEST(Derivative, ReducesToPlainQuadrotorWithoutArm) {
  QuadParams q;
  q.arm_mass = 0.0;
  std::mt19937_64 rng(21);
  std::normal_distribution<double> n;
  for (int i = 0; i < 100; ++i) {
    RigidBodyState s;
    s.v = Vec3(n(rng), n(rng), n(rng));
    s.R = Rotation::from_axis_angle(Vec3(n(rng), n(rng), n(rng)), n(rng));
    s.omega = Vec3(n(rng), n(rng), n(rng));
    const ControlCommand cmd{50.0 + 10 * n(rng), Vec3(n(rng), n(rng), n(rng))};
    const StateDerivative d = derivative(s, cmd, {}, q);
    const Mat3& r = s.R.matrix();
    const Vec3 accel = Vec3(0, 0, 9.81) - cmd.thrust / 5.40 * r.col(2);
    const Vec3 iw(0.16 * s.omega.x(), 0.16 * s.omega.y(), 0.28 * s.omega.z());
    const Vec3 gyro = s.omega.cross(iw);
    const Vec3 wdot((cmd.torque.x() - gyro.x()) / 0.16, (cmd.torque.y() - gyro.y()) / 0.16,
                    (cmd.torque.z() - gyro.z()) / 0.28);
    Mat3 w_hat;
    w_hat << 0, -s.omega.z(), s.omega.y(), s.omega.z(), 0, -s.omega.x(), -s.omega.y(),
        s.omega.x(), 0;
    EXPECT_LT((d.dv - accel).norm(), 1e-12);
    EXPECT_LT((d.domega - wdot).norm(), 1e-12);
    EXPECT_LT((d.dR - r * w_hat).norm(), 1e-12);
    EXPECT_EQ(d.dp, s.v);
  }
}

TEST(Rk4, ZeroDynamicsLeaveStateUnchanged) {
  QuadParams q;
  q.gravity = 0.0;
  const RigidBodyState s;
  const RigidBodyState next = rk4_step(s, {}, nullptr, 0.0, 1e-3, q);
  EXPECT_EQ(next.p, s.p);
  EXPECT_EQ(next.v, s.v);
  EXPECT_EQ(next.omega, s.omega);
  EXPECT_EQ(next.R.matrix(), s.R.matrix());
}

TEST(Rk4, ConstantAccelerationIsIntegratedExactly) {
  const QuadParams q;
  const ControlCommand hover{q.total_mass() * q.gravity, Vec3::Zero()};
  const CouplingFn push = [](double, const RigidBodyState&) {
    return CouplingSample{Vec3(1.0, 0.0, 0.0), Vec3::Zero()};
  };
  RigidBodyState s;
  for (int k = 0; k < 1000; ++k) s = rk4_step(s, hover, push, k * 1e-3, 1e-3, q);
  EXPECT_NEAR(s.v.x(), 1.0, 1e-12);
  EXPECT_NEAR(s.p.x(), 0.5, 1e-12);
  EXPECT_LT(s.v.tail<2>().norm(), 1e-12);
}

TEST(Rk4, FreeBodyMomentumErrorIsFourthOrder) {
  const double coarse = momentum_drift(0.02, 4.0);
  const double fine = momentum_drift(0.01, 4.0);
  const double ratio = coarse / fine;
  EXPECT_GT(ratio, 12.0) << coarse << " " << fine;
  EXPECT_LT(ratio, 20.0) << coarse << " " << fine;
}

TEST(Rk4, GlobalOrderOnForcedTrajectory) {
  // Smoothly varying coupling; reference from a much finer step.
  const QuadParams q;
  auto run = [&](double dt) {
    const CouplingFn c = [](double t, const RigidBodyState&) {
      return CouplingSample{Vec3(std::sin(t), std::cos(2 * t), 0.3),
                            Vec3(0.5 * std::cos(3 * t), std::sin(t), 0.2)};
    };
    RigidBodyState s;
    s.omega = Vec3(0.5, -0.4, 1.0);
    const int n = static_cast<int>(std::lround(2.0 / dt));
    for (int k = 0; k < n; ++k) {
      const double t = k * dt;
      s = rk4_step(s, ControlCommand{70.0, Vec3(0.01, 0.0, -0.005)}, c, t, dt, q);
    }
    return s;
  };
  // The command is held constant so that only the stage-evaluated coupling
  // varies in time; the error against a dt/16 reference should shrink ~16x.
  const RigidBodyState ref = run(0.0025);
  const double e1 = (run(0.04).p - ref.p).norm();
  const double e2 = (run(0.02).p - ref.p).norm();
  EXPECT_GT(e1 / e2, 10.0) << e1 << " " << e2;
  EXPECT_LT(e1 / e2, 24.0) << e1 << " " << e2;
}

TEST(Rk4, RotationStaysOrthonormalFor60Seconds) {
  const QuadParams q;
  RigidBodyState s;
  s.omega = Vec3(2.0, -1.0, 3.0);
  double worst = 0.0;
  for (int k = 0; k < 60000; ++k) {
    s = rk4_step(s, ControlCommand{q.total_mass() * q.gravity, Vec3(0.01, 0.0, -0.02)},
                 nullptr, k * 1e-3, 1e-3, q);
    worst = std::max(worst, s.R.orthogonality_error());
  }
  EXPECT_LT(worst, 1e-9);
}

TEST(Rk4, RejectsNonPositiveStep) {
  try {
    rk4_step(RigidBodyState{}, {}, nullptr, 0.0, 0.0, QuadParams{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
}

TEST(Rk4, NonFiniteCouplingReportsTime) {
  const CouplingFn bad = [](double t, const RigidBodyState&) {
    return CouplingSample{Vec3(t > 0.0045 ? NAN : 0.0, 0, 0), Vec3::Zero()};
  };
  RigidBodyState s;
  try {
    for (int k = 0; k < 10; ++k) s = rk4_step(s, {}, bad, k * 1e-3, 1e-3, QuadParams{});
    FAIL();
  } catch (const NonFiniteStateError& e) {
    EXPECT_NEAR(e.time(), 0.005, 1e-12);
  }
}

TEST(Noise, ZeroDeviationIsIdentity) {
  std::mt19937_64 rng(1);
  RigidBodyState s;
  s.v = Vec3(1, 2, 3);
  s.omega = Vec3(-1, 0.5, 0.25);
  const RigidBodyState m = add_measurement_noise(s, NoiseConfig{}, rng);
  EXPECT_EQ(m.v, s.v);
  EXPECT_EQ(m.omega, s.omega);
  EXPECT_EQ(rng(), std::mt19937_64(1)());  // nothing was drawn
}

TEST(Noise, SeededSequenceIsReproducible) {
  const NoiseConfig cfg{0.01, 0.01};
  std::mt19937_64 a(42), b(42);
  for (int i = 0; i < 100; ++i) {
    const RigidBodyState x = add_measurement_noise(RigidBodyState{}, cfg, a);
    const RigidBodyState y = add_measurement_noise(RigidBodyState{}, cfg, b);
    EXPECT_EQ(x.v, y.v);
    EXPECT_EQ(x.omega, y.omega);
  }
}

TEST(Noise, EmpiricalDeviationMatchesConfig) {
  const NoiseConfig cfg{0.01, 0.02};
  std::mt19937_64 rng(9);
  double sv = 0.0, sw = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const RigidBodyState m = add_measurement_noise(RigidBodyState{}, cfg, rng);
    sv += m.v.x() * m.v.x();
    sw += m.omega.z() * m.omega.z();
  }
  EXPECT_NEAR(std::sqrt(sv / n), 0.01, 0.02 * 0.01);
  EXPECT_NEAR(std::sqrt(sw / n), 0.02, 0.02 * 0.02);
}

TEST(QuadParams, ValidateRejectsBadInertia) {
  QuadParams q;
  q.inertia(0, 1) = 0.1;
  EXPECT_THROW(q.validate(), Error);
  q = QuadParams{};
  q.inertia(2, 2) = -1.0;
  EXPECT_THROW(q.validate(), Error);
  q = QuadParams{};
  q.base_mass = 0.0;
  EXPECT_THROW(q.validate(), Error);
}

}  // namespace
}  // namespace ppcsim
