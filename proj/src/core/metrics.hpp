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

#ifndef PPCSIM_CORE_METRICS_HPP_
#define PPCSIM_CORE_METRICS_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "trial.hpp"

namespace ppcsim {

// Streaming mean / population SD / max. merge() is Chan's pairwise update,
// so merging in a fixed order gives a fixed result.
class RunningStats {
 public:
  void add(double x);
  void merge(const RunningStats& other);

  std::uint64_t count() const { return n_; }
  double mean() const { return mean_; }
  double sd() const;
  double max() const { return max_; }
  double m2() const { return m2_; }

  static RunningStats from_moments(std::uint64_t n, double mean, double m2, double max);

 private:
  std::uint64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
  double max_ = 0.0;
};

// Position errors in centimetres.
struct WindowMetrics {
  std::array<RunningStats, 3> axis;  // |p~_i|
  RunningStats overall;              // ||p~||
};

struct SummaryMetrics {
  WindowMetrics full;
  WindowMetrics steady;               // from the first sample inside rho_inf
  std::optional<double> steady_entry_time;
  std::uint64_t position_violations = 0;
  std::uint64_t attitude_violations = 0;
  double final_error_cm = 0.0;
};

SummaryMetrics compute_metrics(const TrialRecord& record);

enum class EnvelopeChannel { kPosition, kAttitude };

struct EnvelopeViolation {
  std::size_t index = 0;
  double t = 0.0;
  EnvelopeChannel channel = EnvelopeChannel::kPosition;
  int axis = 0;
  double value = 0.0;
  double bound = 0.0;
};

// Every (sample, axis) with |p~_i| >= rho_p,i or |qv_i| >= rho_q,i, in row
// order, position before attitude within a row.
std::vector<EnvelopeViolation> check_envelope(const TrialRecord& record);

}  // namespace ppcsim

#endif  // PPCSIM_CORE_METRICS_HPP_
