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

#include "batch.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "error.hpp"

namespace ppcsim {

using nlohmann::json;

const RunningStats& BatchCell::table_stats() const {
  return table_uses_full() ? full.overall : steady.overall;
}

const BatchCell* BatchResult::find(const std::string& scenario,
                                   ControllerVariant variant) const {
  for (const BatchCell& c : cells) {
    if (c.scenario == scenario && c.variant == variant) return &c;
  }
  return nullptr;
}

TrialSummary summarize(const TrialRecord& record) {
  TrialSummary s;
  s.scenario = record.scenario;
  s.variant = record.variant;
  s.seed = record.seed;
  s.metrics = compute_metrics(record);
  s.delta_f_v = record.delta_f_v;
  s.delta_f_omega = record.delta_f_omega;
  s.arm = record.arm;
  return s;
}

namespace {

void merge_window(WindowMetrics& into, const WindowMetrics& from) {
  for (int i = 0; i < 3; ++i) into.axis[i].merge(from.axis[i]);
  into.overall.merge(from.overall);
}

json stats_json(const RunningStats& s) {
  return json{{"count", s.count()}, {"mean", s.mean()}, {"sd", s.sd()}, {"max", s.max()},
              {"m2", s.m2()}};
}

RunningStats stats_from(const json& j) {
  return RunningStats::from_moments(j.at("count").get<std::uint64_t>(),
                                    j.at("mean").get<double>(), j.at("m2").get<double>(),
                                    j.at("max").get<double>());
}

json window_json(const WindowMetrics& w) {
  return json{{"x_cm", stats_json(w.axis[0])},
              {"y_cm", stats_json(w.axis[1])},
              {"z_cm", stats_json(w.axis[2])},
              {"overall_cm", stats_json(w.overall)}};
}

WindowMetrics window_from(const json& j) {
  WindowMetrics w;
  w.axis[0] = stats_from(j.at("x_cm"));
  w.axis[1] = stats_from(j.at("y_cm"));
  w.axis[2] = stats_from(j.at("z_cm"));
  w.overall = stats_from(j.at("overall_cm"));
  return w;
}

json metrics_json(const SummaryMetrics& m) {
  json j{{"full", window_json(m.full)},
         {"steady", window_json(m.steady)},
         {"position_violations", m.position_violations},
         {"attitude_violations", m.attitude_violations},
         {"final_error_cm", m.final_error_cm}};
  j["steady_entry_time_s"] = m.steady_entry_time ? json(*m.steady_entry_time) : json(nullptr);
  return j;
}

SummaryMetrics metrics_from(const json& j) {
  SummaryMetrics m;
  m.full = window_from(j.at("full"));
  m.steady = window_from(j.at("steady"));
  m.position_violations = j.at("position_violations").get<std::uint64_t>();
  m.attitude_violations = j.at("attitude_violations").get<std::uint64_t>();
  m.final_error_cm = j.at("final_error_cm").get<double>();
  const json& entry = j.at("steady_entry_time_s");
  if (!entry.is_null()) m.steady_entry_time = entry.get<double>();
  return m;
}

json arm_json(const std::optional<ArmMetadata>& arm) {
  if (!arm) return json(nullptr);
  return json{{"amplitude_scale", arm->scale},
              {"peak_speed_m_per_s", arm->stats.peak_speed},
              {"peak_acceleration_m_per_s2", arm->stats.peak_acceleration},
              {"peak_angular_rate_rad_per_s", arm->stats.peak_angular_rate},
              {"phase_offsets_rad", arm->phase_offsets}};
}

std::optional<ArmMetadata> arm_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  ArmMetadata arm;
  arm.scale = j.at("amplitude_scale").get<double>();
  arm.stats.peak_speed = j.at("peak_speed_m_per_s").get<double>();
  arm.stats.peak_acceleration = j.at("peak_acceleration_m_per_s2").get<double>();
  arm.stats.peak_angular_rate = j.at("peak_angular_rate_rad_per_s").get<double>();
  arm.phase_offsets = j.at("phase_offsets_rad").get<std::array<double, kArmJoints>>();
  return arm;
}

ControllerVariant variant_from(const json& j) {
  const auto v = parse_variant(j.get<std::string>());
  if (!v) throw Error(ErrorCode::kIo, "unknown variant in batch summary");
  return *v;
}

json c_report_json(const CBoundReport& r) {
  return json{{"c_min", {r.c_min[0], r.c_min[1], r.c_min[2]}},
              {"admissible", r.admissible}};
}

std::string variant_label(ControllerVariant v) { return std::string(variant_name(v)); }

}  // namespace

BatchResult run_batch(const SimConfig& config, const BatchSpec& spec) {
  if (spec.n_seeds < 1) throw Error(ErrorCode::kInvalidArgument, "n_seeds must be >= 1");
  if (spec.workers < 1) throw Error(ErrorCode::kInvalidArgument, "workers must be >= 1");
  config.validate();
  for (const std::string& s : spec.scenarios) (void)config.scenario(s);
  if (spec.trace_dir) std::filesystem::create_directories(*spec.trace_dir);

  struct Task {
    std::string scenario;
    ControllerVariant variant;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (const std::string& s : spec.scenarios) {
    for (ControllerVariant v : spec.variants) {
      for (int k = 0; k < spec.n_seeds; ++k) {
        tasks.push_back({s, v, spec.first_seed + static_cast<std::uint64_t>(k)});
      }
    }
  }

  std::vector<TrialSummary> summaries(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        const TrialRecord rec = run_trial(config, tasks[i].scenario, tasks[i].variant,
                                          tasks[i].seed);
        summaries[i] = summarize(rec);
        if (spec.trace_dir) {
          const std::string name = tasks[i].scenario + "_" + variant_label(tasks[i].variant) +
                                   "_seed" + std::to_string(tasks[i].seed) + ".csv";
          std::ofstream out(std::filesystem::path(*spec.trace_dir) / name, std::ios::binary);
          if (!out) throw Error(ErrorCode::kIo, "cannot write trace " + name);
          write_csv(rec, out);
        }
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int n_threads =
      static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(spec.workers),
                                             std::max<std::size_t>(tasks.size(), 1)));
  std::vector<std::thread> pool;
  for (int i = 1; i < n_threads; ++i) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  BatchResult result;
  result.config_hash = config_hash(config);
  result.n_seeds = spec.n_seeds;
  result.first_seed = spec.first_seed;
  std::size_t i = 0;
  for (const std::string& s : spec.scenarios) {
    for (ControllerVariant v : spec.variants) {
      BatchCell cell;
      cell.scenario = s;
      cell.variant = v;
      cell.min_arm_peak_speed = 0.0;
      bool first_arm = true;
      for (int k = 0; k < spec.n_seeds; ++k, ++i) {
        const TrialSummary& ts = summaries[i];
        ++cell.trials;
        if (!ts.metrics.steady_entry_time) ++cell.never_settled;
        merge_window(cell.full, ts.metrics.full);
        merge_window(cell.steady, ts.metrics.steady);
        cell.position_violations += ts.metrics.position_violations;
        cell.attitude_violations += ts.metrics.attitude_violations;
        if (ts.arm) {
          cell.min_arm_peak_speed = first_arm
                                        ? ts.arm->stats.peak_speed
                                        : std::min(cell.min_arm_peak_speed,
                                                   ts.arm->stats.peak_speed);
          first_arm = false;
        }
      }
      result.cells.push_back(cell);
    }
  }
  result.trials = std::move(summaries);
  return result;
}

std::string trial_summary_json(const TrialRecord& record, const SummaryMetrics& metrics) {
  json j{{"scenario", record.scenario},
         {"variant", variant_label(record.variant)},
         {"seed", record.seed},
         {"config_hash", hash_hex(record.config_hash)},
         {"dt_s", record.dt},
         {"samples", record.rows.size()},
         {"metrics", metrics_json(metrics)},
         {"arm", arm_json(record.arm)},
         {"convergence_time_s", record.convergence_time},
         {"delta_f_v_m_per_s2", record.delta_f_v},
         {"delta_f_omega_rad_per_s2", record.delta_f_omega}};
  if (record.c_audit) {
    j["c_audit"] = json{{"position", c_report_json(record.c_audit->position)},
                        {"attitude", c_report_json(record.c_audit->attitude)}};
  } else {
    j["c_audit"] = nullptr;
  }
  return j.dump(2) + "\n";
}

std::string validation_report_json(const SimConfig& config) {
  config.validate();
  json scenarios = json::array();
  bool all_ok = true;
  for (const ScenarioConfig& sc : config.scenarios) {
    const CBoundAudit audit = audit_scenario(config, sc.name);
    const bool ok = audit.position.all_admissible() && audit.attitude.all_admissible();
    all_ok = all_ok && ok;
    scenarios.push_back(json{{"name", sc.name},
                             {"admissible", ok},
                             {"position", c_report_json(audit.position)},
                             {"attitude", c_report_json(audit.attitude)}});
  }
  json j{{"status", "ok"},
         {"config_hash", hash_hex(config_hash(config))},
         {"c_bound_enforced", config.controller.enforce_c_bound},
         {"c_audit_admissible", all_ok},
         {"scenarios", scenarios}};
  return j.dump(2) + "\n";
}

std::string envelope_report_json(const TrialRecord& record,
                                 const std::vector<EnvelopeViolation>& violations) {
  std::uint64_t n_pos = 0;
  json list = json::array();
  for (const EnvelopeViolation& v : violations) {
    const bool pos = v.channel == EnvelopeChannel::kPosition;
    if (pos) ++n_pos;
    list.push_back(json{{"index", v.index},
                        {"t_s", v.t},
                        {"channel", pos ? "position" : "attitude"},
                        {"axis", v.axis},
                        {"value", v.value},
                        {"bound", v.bound}});
  }
  json j{{"scenario", record.scenario},
         {"variant", variant_label(record.variant)},
         {"seed", record.seed},
         {"config_hash", hash_hex(record.config_hash)},
         {"samples", record.rows.size()},
         {"violation_count", violations.size()},
         {"position_violations", n_pos},
         {"attitude_violations", violations.size() - n_pos},
         {"violations", list}};
  return j.dump(2) + "\n";
}

std::string batch_to_json(const BatchResult& result) {
  json cells = json::array();
  for (const BatchCell& c : result.cells) {
    cells.push_back(json{{"scenario", c.scenario},
                         {"variant", variant_label(c.variant)},
                         {"trials", c.trials},
                         {"never_settled", c.never_settled},
                         {"full", window_json(c.full)},
                         {"steady", window_json(c.steady)},
                         {"position_violations", c.position_violations},
                         {"attitude_violations", c.attitude_violations},
                         {"min_arm_peak_speed_m_per_s", c.min_arm_peak_speed}});
  }
  json trials = json::array();
  for (const TrialSummary& t : result.trials) {
    trials.push_back(json{{"scenario", t.scenario},
                          {"variant", variant_label(t.variant)},
                          {"seed", t.seed},
                          {"metrics", metrics_json(t.metrics)},
                          {"delta_f_v_m_per_s2", t.delta_f_v},
                          {"delta_f_omega_rad_per_s2", t.delta_f_omega},
                          {"arm", arm_json(t.arm)}});
  }
  json j{{"format", "ppcsim-batch"},
         {"version", 1},
         {"config_hash", hash_hex(result.config_hash)},
         {"n_seeds", result.n_seeds},
         {"first_seed", result.first_seed},
         {"cells", cells},
         {"trials", trials}};
  return j.dump(2) + "\n";
}

BatchResult batch_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    if (j.at("format").get<std::string>() != "ppcsim-batch") {
      throw Error(ErrorCode::kIo, "not a ppcsim batch summary");
    }
    BatchResult r;
    r.config_hash = std::stoull(j.at("config_hash").get<std::string>(), nullptr, 16);
    r.n_seeds = j.at("n_seeds").get<int>();
    r.first_seed = j.at("first_seed").get<std::uint64_t>();
    for (const json& c : j.at("cells")) {
      BatchCell cell;
      cell.scenario = c.at("scenario").get<std::string>();
      cell.variant = variant_from(c.at("variant"));
      cell.trials = c.at("trials").get<int>();
      cell.never_settled = c.at("never_settled").get<int>();
      cell.full = window_from(c.at("full"));
      cell.steady = window_from(c.at("steady"));
      cell.position_violations = c.at("position_violations").get<std::uint64_t>();
      cell.attitude_violations = c.at("attitude_violations").get<std::uint64_t>();
      cell.min_arm_peak_speed = c.at("min_arm_peak_speed_m_per_s").get<double>();
      r.cells.push_back(cell);
    }
    for (const json& t : j.at("trials")) {
      TrialSummary trial;
      trial.scenario = t.at("scenario").get<std::string>();
      trial.variant = variant_from(t.at("variant"));
      trial.seed = t.at("seed").get<std::uint64_t>();
      trial.metrics = metrics_from(t.at("metrics"));
      trial.delta_f_v = t.at("delta_f_v_m_per_s2").get<double>();
      trial.delta_f_omega = t.at("delta_f_omega_rad_per_s2").get<double>();
      trial.arm = arm_from(t.at("arm"));
      r.trials.push_back(std::move(trial));
    }
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kIo, std::string("malformed batch summary: ") + e.what());
  } catch (const std::logic_error& e) {
    throw Error(ErrorCode::kIo, std::string("malformed batch summary: ") + e.what());
  }
}

std::string render_table(const BatchResult& result) {
  static constexpr std::array<ControllerVariant, 4> kOrder{
      ControllerVariant::kBaselinePid, ControllerVariant::kNoEso,
      ControllerVariant::kNoPresetTrajectory, ControllerVariant::kProposed};
  std::vector<std::string> scenarios;
  for (const BatchCell& c : result.cells) {
    if (std::find(scenarios.begin(), scenarios.end(), c.scenario) == scenarios.end()) {
      scenarios.push_back(c.scenario);
    }
  }
  std::ostringstream os;
  char line[160];
  std::snprintf(line, sizeof(line), "%-14s %-11s %-18s %-13s %s\n", "Scenario", "Method",
                "Mean +- SD (cm)", "Maximum (cm)", "Trials");
  os << line;
  for (const std::string& s : scenarios) {
    for (ControllerVariant v : kOrder) {
      const BatchCell* c = result.find(s, v);
      if (!c) continue;
      const RunningStats& st = c->table_stats();
      char cell[40];
      std::snprintf(cell, sizeof(cell), "%.2f +- %.2f%s", st.mean(), st.sd(),
                    c->table_uses_full() ? "*" : "");
      std::snprintf(line, sizeof(line), "%-14s %-11s %-18s %-13.2f %d\n", s.c_str(),
                    variant_label(v).c_str(), cell, st.max(), c->trials);
      os << line;
    }
  }
  os << "Steady-state window (from first entry into rho_inf); * = never settled, "
        "full trial shown.\n";
  return os.str();
}

}  // namespace ppcsim
