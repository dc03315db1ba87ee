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

#include "so3.hpp"

#include <cmath>
#include <sstream>

#include "error.hpp"

namespace ppcsim {

Mat3 hat(const Vec3& v) {
  Mat3 m;
  m << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
       -v.y(), v.x(), 0.0;
  return m;
}

Vec3 vee(const Mat3& m) {
  const double residual = (m + m.transpose()).cwiseAbs().maxCoeff();
  if (!(residual <= kSkewTolerance * std::max(1.0, m.cwiseAbs().maxCoeff()))) {
    std::ostringstream os;
    os << "vee: input is not skew-symmetric (residual " << residual << ")";
    throw Error(ErrorCode::kNonSkewInput, os.str());
  }
  return vee_skew_part(m);
}

Vec3 vee_skew_part(const Mat3& m) {
  return Vec3(0.5 * (m(2, 1) - m(1, 2)), 0.5 * (m(0, 2) - m(2, 0)),
              0.5 * (m(1, 0) - m(0, 1)));
}

Rotation Rotation::from_matrix(const Mat3& m) {
  if (!m.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "rotation has non-finite entries");
  }
  const double orth = (m.transpose() * m - Mat3::Identity()).cwiseAbs().maxCoeff();
  const double det = m.determinant();
  if (orth > kRotationTolerance || std::abs(det - 1.0) > kRotationTolerance) {
    std::ostringstream os;
    os << "matrix is not in SO(3): |R^T R - I| = " << orth << ", det = " << det;
    throw Error(ErrorCode::kInvalidArgument, os.str());
  }
  return Rotation(m);
}

Rotation Rotation::orthonormalized(const Mat3& m) {
  // Newton iteration for the polar factor, X <- (X + X^-T) / 2. Integrator
  // drift is tiny, so two iterations land at machine precision.
  Mat3 x = m;
  for (int i = 0; i < 2; ++i) {
    x = 0.5 * (x + x.inverse().transpose());
  }
  return Rotation(x);
}

Rotation Rotation::from_axis_angle(const Vec3& axis, double angle) {
  return Rotation(Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix());
}

double Rotation::orthogonality_error() const {
  return (m_.transpose() * m_ - Mat3::Identity()).cwiseAbs().maxCoeff();
}

ErrorQuaternion error_quaternion(const Rotation& rot_err) {
  const Mat3& r = rot_err.matrix();
  const double tr = r.trace();
  if (!(tr > -1.0 + kSingularTraceMargin)) {
    std::ostringstream os;
    os << "attitude error too close to 180 deg (trace " << tr << ")";
    throw Error(ErrorCode::kNearSingularAttitude, os.str());
  }
  ErrorQuaternion q;
  q.q0 = 0.5 * std::sqrt(1.0 + tr);
  q.qv = vee_skew_part(r - r.transpose()) / (4.0 * q.q0);
  return q;
}

Mat3 q_matrix(const ErrorQuaternion& q) {
  return q.q0 * Mat3::Identity() + hat(q.qv);
}

}  // namespace ppcsim
