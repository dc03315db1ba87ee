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

// Vector/rotation algebra used by the plant and the attitude controller.

#ifndef PPCSIM_CORE_SO3_HPP_
#define PPCSIM_CORE_SO3_HPP_

#include <Eigen/Dense>

namespace ppcsim {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Tolerance on R^T R = I and det(R) = 1 accepted by Rotation::from_matrix.
inline constexpr double kRotationTolerance = 1e-9;
// Residual ||M + M^T||_max above which vee() rejects its input.
inline constexpr double kSkewTolerance = 1e-9;
// error_quaternion() requires trace(R) > -1 + this.
inline constexpr double kSingularTraceMargin = 1e-6;

// [v]x, so that hat(v) * w == v.cross(w).
Mat3 hat(const Vec3& v);

// Inverse of hat(). Throws Error(kNonSkewInput) when m is not skew-symmetric.
Vec3 vee(const Mat3& m);

// vee() of the skew-symmetric part of m; never throws.
Vec3 vee_skew_part(const Mat3& m);

// Element of SO(3). Construction validates orthonormality; the plant keeps
// its attitude on the manifold through orthonormalized().
class Rotation {
 public:
  Rotation() : m_(Mat3::Identity()) {}

  static Rotation identity() { return Rotation(); }

  // Throws Error(kInvalidArgument) if m is not a rotation within
  // kRotationTolerance.
  static Rotation from_matrix(const Mat3& m);

  // Projects an almost-orthonormal matrix onto SO(3) (polar factor).
  static Rotation orthonormalized(const Mat3& m);

  static Rotation from_axis_angle(const Vec3& axis, double angle);

  const Mat3& matrix() const { return m_; }
  Rotation transpose() const { return Rotation(m_.transpose()); }

  // ||R^T R - I||_max.
  double orthogonality_error() const;

  Rotation operator*(const Rotation& other) const {
    return Rotation(m_ * other.m_);
  }
  Vec3 operator*(const Vec3& v) const { return m_ * v; }

 private:
  explicit Rotation(const Mat3& m) : m_(m) {}
  Mat3 m_;
};

// Scalar-positive unit quaternion describing an attitude error.
struct ErrorQuaternion {
  double q0 = 1.0;
  Vec3 qv = Vec3::Zero();
};

// q0 = sqrt(1 + tr R)/2, qv = vee(R - R^T) / (4 q0).
// Throws Error(kNearSingularAttitude) when tr R <= -1 + kSingularTraceMargin.
ErrorQuaternion error_quaternion(const Rotation& rot_err);

// Q = q0 I + [qv]x; maps the error angular velocity onto qv_dot (times 2).
Mat3 q_matrix(const ErrorQuaternion& q);

}  // namespace ppcsim

#endif  // PPCSIM_CORE_SO3_HPP_
