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

#include "error.hpp"
#include "so3.hpp"

namespace ppcsim {
namespace {

// Rodrigues' formula written out by hand, independent of Eigen::AngleAxis.
Mat3 rodrigues(const Vec3& axis, double angle) {
  const Vec3 u = axis.normalized();
  Mat3 k;
  k << 0, -u.z(), u.y(), u.z(), 0, -u.x(), -u.y(), u.x(), 0;
  return Mat3::Identity() + std::sin(angle) * k + (1 - std::cos(angle)) * k * k;
}

// Hamilton quaternion (w, x, y, z) to rotation matrix.
Mat3 quat_to_matrix(double w, const Vec3& v) {
  const double x = v.x(), y = v.y(), z = v.z();
  Mat3 m;
  m << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
      2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
      2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y);
  return m;
}

TEST(Hat, ZeroVectorGivesZeroMatrix) {
  EXPECT_TRUE(hat(Vec3::Zero()).isZero(0.0));
}

TEST(Hat, VeeInvertsHat) {
  const Vec3 v(1, 2, 3);
  EXPECT_EQ(vee(hat(v)), v);
}

TEST(Hat, UnitXTimesUnitYIsUnitZ) {
  EXPECT_EQ(hat(Vec3::UnitX()) * Vec3::UnitY(), Vec3::UnitZ());
}

TEST(Hat, MatchesCrossProductAndIsSkew) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n;
  for (int i = 0; i < 200; ++i) {
    const Vec3 a(n(rng), n(rng), n(rng));
    const Vec3 b(n(rng), n(rng), n(rng));
    const Mat3 h = hat(a);
    EXPECT_TRUE((h + h.transpose()).isZero(0.0));
    const Vec3 cross(a.y() * b.z() - a.z() * b.y(), a.z() * b.x() - a.x() * b.z(),
                     a.x() * b.y() - a.y() * b.x());
    EXPECT_LT((h * b - cross).norm(), 1e-14);
  }
}

TEST(Vee, RoundTripAndZero) {
  EXPECT_EQ(vee(hat(Vec3(3, -1, 2))), Vec3(3, -1, 2));
  EXPECT_EQ(vee(Mat3::Zero()), Vec3::Zero());
}

TEST(Vee, SkewPartOfSmallZRotation) {
  const Mat3 r = rodrigues(Vec3::UnitZ(), 0.1);
  const Vec3 out = vee(r - r.transpose());
  EXPECT_NEAR(out.x(), 0.0, 1e-15);
  EXPECT_NEAR(out.y(), 0.0, 1e-15);
  EXPECT_NEAR(out.z(), 2 * std::sin(0.1), 1e-15);
}

TEST(Vee, RejectsNonSkewInput) {
  Mat3 m = hat(Vec3(1, 2, 3));
  m(0, 0) = 1e-6;
  try {
    vee(m);
    FAIL() << "expected NonSkewInput";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonSkewInput);
  }
}

TEST(Vee, RandomRoundTripTo1e12) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-100, 100);
  for (int i = 0; i < 500; ++i) {
    const Vec3 v(u(rng), u(rng), u(rng));
    EXPECT_LT((vee(hat(v)) - v).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(ErrorQuaternion, IdentityRotation) {
  const ErrorQuaternion q = error_quaternion(Rotation::identity());
  EXPECT_EQ(q.q0, 1.0);
  EXPECT_EQ(q.qv, Vec3::Zero());
}

TEST(ErrorQuaternion, RotationAboutXMatchesHalfAngle) {
  const Rotation r = Rotation::from_matrix(rodrigues(Vec3::UnitX(), 0.2));
  const ErrorQuaternion q = error_quaternion(r);
  EXPECT_NEAR(q.q0, std::cos(0.1), 1e-15);
  EXPECT_NEAR(q.qv.x(), std::sin(0.1), 1e-15);
  EXPECT_NEAR(q.qv.y(), 0.0, 1e-15);
  EXPECT_NEAR(q.qv.z(), 0.0, 1e-15);
}

TEST(ErrorQuaternion, RecomposesToInputAndStaysUnitScalarPositive) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n;
  std::uniform_real_distribution<double> ang(0.0, 3.1);
  for (int i = 0; i < 500; ++i) {
    const Mat3 m = rodrigues(Vec3(n(rng), n(rng), n(rng)), ang(rng));
    const ErrorQuaternion q = error_quaternion(Rotation::from_matrix(m));
    EXPECT_GT(q.q0, 0.0);
    EXPECT_NEAR(q.q0 * q.q0 + q.qv.squaredNorm(), 1.0, 1e-9);
    EXPECT_LT((quat_to_matrix(q.q0, q.qv) - m).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(ErrorQuaternion, NearHalfTurnIsRejected) {
  const Rotation r = Rotation::from_matrix(rodrigues(Vec3::UnitY(), M_PI));
  try {
    error_quaternion(r);
    FAIL() << "expected NearSingularAttitude";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNearSingularAttitude);
  }
}

TEST(QMatrix, IdentityQuaternionGivesIdentity) {
  EXPECT_EQ(q_matrix(ErrorQuaternion{}), Mat3::Identity());
}

TEST(QMatrix, DirectFormula) {
  const ErrorQuaternion q{std::cos(0.1), Vec3(std::sin(0.1), 0, 0)};
  Mat3 expect = std::cos(0.1) * Mat3::Identity();
  expect(1, 2) = -std::sin(0.1);
  expect(2, 1) = std::sin(0.1);
  EXPECT_LT((q_matrix(q) - expect).cwiseAbs().maxCoeff(), 1e-16);
}

TEST(QMatrix, PositiveDeterminantAndNormBound) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n;
  int checked = 0;
  while (checked < 1000) {
    Eigen::Vector4d raw(n(rng), n(rng), n(rng), n(rng));
    raw.normalize();
    if (raw[0] < 0) raw = -raw;
    if (raw[0] <= 0.1) continue;
    const ErrorQuaternion q{raw[0], raw.tail<3>()};
    const Mat3 qm = q_matrix(q);
    EXPECT_GT(qm.determinant(), 0.0);
    const double spectral = Eigen::JacobiSVD<Mat3>(qm).singularValues()[0];
    EXPECT_LE(spectral, std::abs(q.q0) + q.qv.norm() + 1e-12);
    EXPECT_LE(std::abs(q.q0) + q.qv.norm(), 2.0);
    ++checked;
  }
}

TEST(Rotation, FromMatrixRejectsNonOrthogonal) {
  Mat3 m = Mat3::Identity();
  m(0, 1) = 1e-6;
  EXPECT_THROW(Rotation::from_matrix(m), Error);
}

TEST(Rotation, OrthonormalizedProjectsPerturbedMatrix) {
  Mat3 m = rodrigues(Vec3(1, 2, 3), 0.7);
  m(0, 0) += 1e-4;
  m(2, 1) -= 2e-4;
  const Rotation r = Rotation::orthonormalized(m);
  EXPECT_LT(r.orthogonality_error(), 1e-12);
  EXPECT_NEAR(r.matrix().determinant(), 1.0, 1e-12);
  EXPECT_LT((r.matrix() - m).norm(), 1e-3);
}

TEST(Rotation, AxisAngleMatchesRodrigues) {
  const Rotation r = Rotation::from_axis_angle(Vec3(0.3, -1, 2), 1.1);
  EXPECT_LT((r.matrix() - rodrigues(Vec3(0.3, -1, 2), 1.1)).cwiseAbs().maxCoeff(), 1e-14);
}

}  // namespace
}  // namespace ppcsim
