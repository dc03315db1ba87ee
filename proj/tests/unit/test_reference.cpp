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
#include <numbers>

#include <gtest/gtest.h>

#include "error.hpp"
#include "reference.hpp"

namespace ppcsim {
namespace {

constexpr double kPi = std::numbers::pi;

ReferenceSpec spec_of(ReferenceKind kind, double lead_in) {
  ReferenceSpec s;
  s.kind = kind;
  s.lead_in = lead_in;
  return s;
}

TEST(Reference, NamesRoundTrip) {
  for (ReferenceKind k : {ReferenceKind::kHover, ReferenceKind::kSetpoint, ReferenceKind::kCircle,
                          ReferenceKind::kFigureEight, ReferenceKind::kCartPull}) {
    EXPECT_EQ(parse_reference_kind(reference_kind_name(k)), k);
  }
  EXPECT_FALSE(parse_reference_kind("spiral").has_value());
}

TEST(Reference, SetpointIsConstantTarget) {
  const ReferenceSpec s = spec_of(ReferenceKind::kSetpoint, 2.0);
  for (double t : {0.0, 1.0, 19.0}) {
    const ReferenceSignal r = reference_at(s, t);
    EXPECT_EQ(r.p_d, Vec3(0.8, -0.8, -0.7));
    EXPECT_EQ(r.dp_d, Vec3::Zero());
    EXPECT_EQ(r.ddp_d, Vec3::Zero());
    EXPECT_EQ(r.psi_d, 0.0);
  }
}

TEST(Reference, FigureEightMatchesClosedForm) {
  const ReferenceSpec s = spec_of(ReferenceKind::kFigureEight, 0.0);
  for (double t = 0.0; t < 32.0; t += 0.77) {
    const ReferenceSignal r = reference_at(s, t);
    EXPECT_NEAR(r.p_d.x(), 0.65 * std::sin(4 * kPi * t / 16.0), 1e-14);
    EXPECT_NEAR(r.p_d.y() + 0.0, 1.3 * std::sin(2 * kPi * t / 16.0), 1e-14);
    EXPECT_EQ(r.p_d.z(), -1.5);
  }
}

TEST(Reference, CircleHasRadiusAndPeriod) {
  const ReferenceSpec s = spec_of(ReferenceKind::kCircle, 0.0);
  const Vec3 centre = s.start - Vec3(1.5, 0.0, 0.0);
  for (double t = 0.0; t < 16.0; t += 0.5) {
    const ReferenceSignal r = reference_at(s, t);
    EXPECT_NEAR((r.p_d - centre).norm(), 1.5, 1e-14);
    EXPECT_NEAR(r.dp_d.norm(), 1.5 * 2 * kPi / 16.0, 1e-14);
  }
  EXPECT_LT((reference_at(s, 16.0).p_d - s.start).norm(), 1e-12);
}

TEST(Reference, DerivativesMatchFiniteDifferences) {
  const double h = 1e-5;
  for (ReferenceKind k : {ReferenceKind::kCircle, ReferenceKind::kFigureEight,
                          ReferenceKind::kCartPull}) {
    for (double lead : {0.0, 2.0}) {
      const ReferenceSpec s = spec_of(k, lead);
      for (double t = 0.3; t < 25.0; t += 0.61) {
        const ReferenceSignal a = reference_at(s, t - h);
        const ReferenceSignal b = reference_at(s, t + h);
        const ReferenceSignal m = reference_at(s, t);
        EXPECT_LT((m.dp_d - (b.p_d - a.p_d) / (2 * h)).norm(), 1e-7) << t;
        EXPECT_LT((m.ddp_d - (b.dp_d - a.dp_d) / (2 * h)).norm(), 1e-6) << t;
      }
    }
  }
}

TEST(Reference, LeadInStartsAtRestAndJoinsNominalSpeed) {
  const ReferenceSpec warped = spec_of(ReferenceKind::kCircle, 2.0);
  const ReferenceSignal r0 = reference_at(warped, 0.0);
  EXPECT_EQ(r0.p_d, warped.start);
  EXPECT_EQ(r0.dp_d.norm(), 0.0);
  EXPECT_EQ(r0.ddp_d.norm(), 0.0);
  EXPECT_NEAR(reference_at(warped, 5.0).dp_d.norm(), 1.5 * 2 * kPi / 16.0, 1e-14);
}

TEST(Reference, CartPullProfile) {
  const ReferenceSpec s = spec_of(ReferenceKind::kCartPull, 0.0);
  EXPECT_EQ(reference_at(s, 4.0).p_d, s.start);
  EXPECT_NEAR(reference_at(s, 10.0).dp_d.y(), -0.25, 1e-15);
  const ReferenceSignal end = reference_at(s, 20.0);
  EXPECT_EQ(end.dp_d.y(), 0.0);
  // Cruise time 10 s plus two ramps each covering half their length.
  EXPECT_NEAR(end.p_d.y() - s.start.y(), -0.25 * 11.0, 1e-12);
}

TEST(Reference, NegativeTimeAndBadSpecRejected) {
  EXPECT_THROW(reference_at(ReferenceSpec{}, -0.1), Error);
  ReferenceSpec s;
  s.period = 0.0;
  EXPECT_THROW(s.validate(), Error);
  s = ReferenceSpec{};
  s.lead_in = -1.0;
  EXPECT_THROW(s.validate(), Error);
}

}  // namespace
}  // namespace ppcsim
