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

#include "metrics.hpp"

#include <algorithm>
#include <cmath>

namespace ppcsim {

void RunningStats::add(double x) {
  ++n_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(n_);
  m2_ += delta * (x - mean_);
  max_ = n_ == 1 ? x : std::max(max_, x);
}

void RunningStats::merge(const RunningStats& other) {
  if (other.n_ == 0) return;
  if (n_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(n_);
  const double nb = static_cast<double>(other.n_);
  const double n = na + nb;
  const double delta = other.mean_ - mean_;
  mean_ += delta * nb / n;
  m2_ += other.m2_ + delta * delta * na * nb / n;
  n_ += other.n_;
  max_ = std::max(max_, other.max_);
}

double RunningStats::sd() const {
  return n_ ? std::sqrt(m2_ / static_cast<double>(n_)) : 0.0;
}

RunningStats RunningStats::from_moments(std::uint64_t n, double mean, double m2,
                                        double max) {
  RunningStats s;
  s.n_ = n;
  s.mean_ = mean;
  s.m2_ = m2;
  s.max_ = max;
  return s;
}

namespace {

void add_sample(WindowMetrics& w, const Vec3& err_cm) {
  for (int i = 0; i < 3; ++i) w.axis[i].add(std::abs(err_cm[i]));
  w.overall.add(err_cm.norm());
}

}  // namespace

SummaryMetrics compute_metrics(const TrialRecord& record) {
  SummaryMetrics m;
  bool steady = false;
  for (const TickRow& row : record.rows) {
    const Vec3 err_cm = 100.0 * row.position_error;
    add_sample(m.full, err_cm);
    if (!steady && (row.position_error.cwiseAbs().array() < record.rho_p_inf.array()).all()) {
      steady = true;
      m.steady_entry_time = row.t;
    }
    if (steady) add_sample(m.steady, err_cm);
    for (int i = 0; i < 3; ++i) {
      if (!(std::abs(row.position_error[i]) < row.rho_p[i])) ++m.position_violations;
      if (!(std::abs(row.qv[i]) < row.rho_q[i])) ++m.attitude_violations;
    }
  }
  if (!record.rows.empty()) m.final_error_cm = 100.0 * record.rows.back().position_error.norm();
  return m;
}

std::vector<EnvelopeViolation> check_envelope(const TrialRecord& record) {
  std::vector<EnvelopeViolation> out;
  for (std::size_t k = 0; k < record.rows.size(); ++k) {
    const TickRow& row = record.rows[k];
    for (int i = 0; i < 3; ++i) {
      if (!(std::abs(row.position_error[i]) < row.rho_p[i])) {
        out.push_back({k, row.t, EnvelopeChannel::kPosition, i, row.position_error[i],
                       row.rho_p[i]});
      }
    }
    for (int i = 0; i < 3; ++i) {
      if (!(std::abs(row.qv[i]) < row.rho_q[i])) {
        out.push_back({k, row.t, EnvelopeChannel::kAttitude, i, row.qv[i], row.rho_q[i]});
      }
    }
  }
  return out;
}

}  // namespace ppcsim
