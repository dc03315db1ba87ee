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

// Seeded batches over (scenario, variant, seed). Trials run on a thread pool
// but are reduced strictly in (scenario, variant, seed) order, so the
// outputs do not depend on the worker count.

#ifndef PPCSIM_CORE_BATCH_HPP_
#define PPCSIM_CORE_BATCH_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "metrics.hpp"

namespace ppcsim {

struct BatchSpec {
  std::vector<std::string> scenarios;
  std::vector<ControllerVariant> variants;
  int n_seeds = 10;
  std::uint64_t first_seed = 1;
  int workers = 1;
  // When set, every trial's CSV is written here as
  // <scenario>_<variant>_seed<N>.csv.
  std::optional<std::string> trace_dir;
};

struct TrialSummary {
  std::string scenario;
  ControllerVariant variant = ControllerVariant::kProposed;
  std::uint64_t seed = 0;
  SummaryMetrics metrics;
  double delta_f_v = 0.0;
  double delta_f_omega = 0.0;
  std::optional<ArmMetadata> arm;
};

struct BatchCell {
  std::string scenario;
  ControllerVariant variant = ControllerVariant::kProposed;
  int trials = 0;
  int never_settled = 0;
  WindowMetrics full;    // pooled over seeds
  WindowMetrics steady;  // pooled over seeds
  std::uint64_t position_violations = 0;
  std::uint64_t attitude_violations = 0;
  double min_arm_peak_speed = 0.0;

  // Statistic shown in the comparison table: steady-state window when any
  // trial settled, full trial otherwise.
  const RunningStats& table_stats() const;
  bool table_uses_full() const { return steady.overall.count() == 0; }
};

struct BatchResult {
  std::uint64_t config_hash = 0;
  int n_seeds = 0;
  std::uint64_t first_seed = 1;
  std::vector<BatchCell> cells;
  std::vector<TrialSummary> trials;  // in reduction order

  const BatchCell* find(const std::string& scenario, ControllerVariant variant) const;
};

TrialSummary summarize(const TrialRecord& record);

// Throws Error(kInvalidArgument) for n_seeds < 1 or workers < 1; rethrows the
// first failing trial's error in reduction order.
BatchResult run_batch(const SimConfig& config, const BatchSpec& spec);

std::string trial_summary_json(const TrialRecord& record, const SummaryMetrics& metrics);
// Per-scenario c audit of a validated config (see audit_scenario). The
// "admissible" flag is advisory unless the config enforces the bound.
std::string validation_report_json(const SimConfig& config);
// Envelope audit of a recorded trial: metadata, counts and every violation.
std::string envelope_report_json(const TrialRecord& record,
                                 const std::vector<EnvelopeViolation>& violations);
std::string batch_to_json(const BatchResult& result);
// Throws Error(kIo) on malformed input.
BatchResult batch_from_json(const std::string& text);

// Plain-text comparison table, one block per scenario, rows ordered pid,
// no_eso, no_preset, proposed.
std::string render_table(const BatchResult& result);

}  // namespace ppcsim

#endif  // PPCSIM_CORE_BATCH_HPP_
