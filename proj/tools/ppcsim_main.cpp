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

// ppcsim command-line front end. Talks to the simulator only through the C
// API in ppcsim/ppcsim.h.
//
// Exit codes: 0 success, 1 library or I/O error (JSON on stderr), 2 usage
// error, 3 audit failure (envelope violations for `check`, inadmissible c
// for `validate --strict`).

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ppcsim/ppcsim.h"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kExitError = 1;
constexpr int kExitUsage = 2;
constexpr int kExitAudit = 3;

struct CliError {
  std::string code;
  int status;
  std::string message;
  double time = -1.0;
};

void check(ppc_status st) {
  if (st != PPC_OK) {
    throw CliError{ppc_status_name(st), static_cast<int>(st), ppc_last_error(),
                   ppc_last_error_time()};
  }
}

[[noreturn]] void io_error(const std::string& message) {
  throw CliError{"Io", PPC_ERR_IO, message};
}

struct ConfigDeleter {
  void operator()(ppc_config* c) const { ppc_config_free(c); }
};
struct TrialDeleter {
  void operator()(ppc_trial* t) const { ppc_trial_free(t); }
};
struct BatchDeleter {
  void operator()(ppc_batch* b) const { ppc_batch_free(b); }
};
using ConfigPtr = std::unique_ptr<ppc_config, ConfigDeleter>;
using TrialPtr = std::unique_ptr<ppc_trial, TrialDeleter>;
using BatchPtr = std::unique_ptr<ppc_batch, BatchDeleter>;

// Takes ownership of a library-allocated string.
std::string take(char* s) {
  std::string out = s ? s : "";
  ppc_string_free(s);
  return out;
}

ConfigPtr load_config(const std::string& path) {
  ppc_config* raw = nullptr;
  check(path.empty() ? ppc_config_default(&raw) : ppc_config_load(path.c_str(), &raw));
  return ConfigPtr(raw);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) io_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) io_error("cannot write " + path.string());
  out << text;
  if (!out) io_error("write failed: " + path.string());
}

void make_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) io_error("cannot create " + dir + ": " + ec.message());
}

struct RunArgs {
  std::string config;
  std::string scenario;
  std::string variant = "proposed";
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "csv";
};

int cmd_run(const RunArgs& a) {
  ConfigPtr cfg = load_config(a.config);
  ppc_trial* raw = nullptr;
  check(ppc_run_trial(cfg.get(), a.scenario.c_str(), a.variant.c_str(), a.seed, &raw));
  TrialPtr trial(raw);
  char* s = nullptr;
  check(ppc_trial_summary_json(trial.get(), &s));
  const std::string summary = take(s);
  if (a.out.empty()) {
    if (a.format == "json") {
      std::cout << summary;
    } else {
      check(ppc_trial_csv(trial.get(), &s));
      std::cout << take(s);
    }
    return 0;
  }
  make_dir(a.out);
  const std::string stem = a.scenario + "_" + a.variant + "_seed" + std::to_string(a.seed);
  const fs::path csv = fs::path(a.out) / (stem + ".csv");
  check(ppc_trial_write_csv(trial.get(), csv.c_str()));
  write_file(fs::path(a.out) / (stem + ".json"), summary);
  std::cout << summary;
  return 0;
}

struct BatchArgs {
  std::string config;
  std::vector<std::string> scenarios{"setpoint", "circle", "figure_eight"};
  std::vector<std::string> variants{"proposed", "no_preset", "no_eso", "pid"};
  int trials = 10;
  std::uint64_t seed = 1;
  int workers = 1;
  std::string out;
  bool traces = false;
  std::string format = "table";
};

int cmd_batch(const BatchArgs& a) {
  ConfigPtr cfg = load_config(a.config);
  std::vector<const char*> scen;
  for (const std::string& s : a.scenarios) scen.push_back(s.c_str());
  std::vector<const char*> vars;
  for (const std::string& v : a.variants) vars.push_back(v.c_str());
  std::string trace_dir;
  if (a.traces) {
    if (a.out.empty()) {
      throw CliError{"InvalidArgument", PPC_ERR_INVALID_ARGUMENT, "--traces needs --out"};
    }
    trace_dir = (fs::path(a.out) / "traces").string();
  }
  ppc_batch_spec spec{};
  spec.scenarios = scen.data();
  spec.scenario_count = scen.size();
  spec.variants = vars.data();
  spec.variant_count = vars.size();
  spec.seed_count = a.trials;
  spec.first_seed = a.seed;
  spec.workers = a.workers;
  spec.trace_dir = a.traces ? trace_dir.c_str() : nullptr;
  ppc_batch* raw = nullptr;
  check(ppc_run_batch(cfg.get(), &spec, &raw));
  BatchPtr batch(raw);
  char* s = nullptr;
  check(ppc_batch_json(batch.get(), &s));
  const std::string js = take(s);
  check(ppc_batch_table(batch.get(), &s));
  const std::string table = take(s);
  if (!a.out.empty()) {
    make_dir(a.out);
    write_file(fs::path(a.out) / "batch.json", js);
    write_file(fs::path(a.out) / "table.txt", table);
  }
  std::cout << (a.format == "json" ? js : table);
  return 0;
}

int cmd_check(const std::vector<std::string>& files) {
  std::uint64_t total = 0;
  json reports = json::array();
  for (const std::string& f : files) {
    char* s = nullptr;
    std::uint64_t n = 0;
    check(ppc_check_csv(f.c_str(), &s, &n));
    json r = json::parse(take(s));
    r["file"] = f;
    reports.push_back(std::move(r));
    total += n;
  }
  std::cout << (reports.size() == 1 ? reports[0] : reports).dump(2) << "\n";
  return total == 0 ? 0 : kExitAudit;
}

int cmd_validate(const std::string& config, bool strict) {
  ConfigPtr cfg = load_config(config);
  char* s = nullptr;
  check(ppc_config_validate(cfg.get(), &s));
  const std::string report = take(s);
  std::cout << report;
  if (strict && !json::parse(report).at("c_audit_admissible").get<bool>()) return kExitAudit;
  return 0;
}

int cmd_table(std::vector<std::string> files, const std::string& out) {
  if (files.empty()) {
    if (out.empty()) {
      throw CliError{"InvalidArgument", PPC_ERR_INVALID_ARGUMENT,
                     "table needs batch summary files or --out DIR"};
    }
    files.push_back((fs::path(out) / "batch.json").string());
  }
  for (const std::string& f : files) {
    ppc_batch* raw = nullptr;
    check(ppc_batch_from_json(read_file(f).c_str(), &raw));
    BatchPtr batch(raw);
    char* s = nullptr;
    check(ppc_batch_table(batch.get(), &s));
    std::cout << take(s);
  }
  return 0;
}

void print_error(const CliError& e) {
  json j{{"error", {{"code", e.code}, {"status", e.status}, {"message", e.message}}}};
  if (e.time >= 0.0) j["error"]["time_s"] = e.time;
  std::cerr << j.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prescribed-performance aerial manipulator simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ppc_version()));

  RunArgs run;
  CLI::App* run_cmd = app.add_subcommand("run", "Run a single trial");
  run_cmd->add_option("--config", run.config, "Config file (default: built-in)");
  run_cmd->add_option("--scenario", run.scenario, "Scenario name")->required();
  run_cmd->add_option("--variant", run.variant, "proposed | pid | no_eso | no_preset");
  run_cmd->add_option("--seed", run.seed, "Trial seed");
  run_cmd->add_option("--out", run.out, "Directory for the CSV trace and JSON summary");
  run_cmd->add_option("--format", run.format, "Stdout format without --out")
      ->check(CLI::IsMember({"csv", "json"}));

  BatchArgs batch;
  CLI::App* batch_cmd = app.add_subcommand("batch", "Run seeded trials over scenarios");
  batch_cmd->add_option("--config", batch.config, "Config file (default: built-in)");
  batch_cmd->add_option("--scenario", batch.scenarios, "Scenario name (repeatable)");
  batch_cmd->add_option("--variant", batch.variants, "Variant name (repeatable)");
  batch_cmd->add_option("--trials", batch.trials, "Seeds per (scenario, variant)");
  batch_cmd->add_option("--seed", batch.seed, "First seed");
  batch_cmd->add_option("--workers", batch.workers, "Worker threads");
  batch_cmd->add_option("--out", batch.out, "Directory for batch.json and table.txt");
  batch_cmd->add_flag("--traces", batch.traces, "Also write every trial CSV to OUT/traces");
  batch_cmd->add_option("--format", batch.format, "Stdout format")
      ->check(CLI::IsMember({"table", "json"}));

  std::vector<std::string> check_files;
  CLI::App* check_cmd = app.add_subcommand("check", "Envelope audit of trial CSV files");
  check_cmd->add_option("files", check_files, "Trial CSV files")->required();

  std::string validate_config;
  bool strict = false;
  CLI::App* validate_cmd = app.add_subcommand("validate", "Validate a config and audit c");
  validate_cmd->add_option("--config", validate_config, "Config file (default: built-in)");
  validate_cmd->add_flag("--strict", strict, "Exit 3 when any c audit is inadmissible");

  std::vector<std::string> table_files;
  std::string table_out;
  CLI::App* table_cmd = app.add_subcommand("table", "Render the comparison table");
  table_cmd->add_option("files", table_files, "batch.json files");
  table_cmd->add_option("--out", table_out, "Batch output directory holding batch.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error(CliError{"Usage", -1, e.what()});
    return kExitUsage;
  }

  try {
    if (*run_cmd) return cmd_run(run);
    if (*batch_cmd) return cmd_batch(batch);
    if (*check_cmd) return cmd_check(check_files);
    if (*validate_cmd) return cmd_validate(validate_config, strict);
    if (*table_cmd) return cmd_table(table_files, table_out);
  } catch (const CliError& e) {
    print_error(e);
    return kExitError;
  } catch (const std::exception& e) {
    print_error(CliError{"Internal", PPC_ERR_INTERNAL, e.what()});
    return kExitError;
  }
  return kExitUsage;
}
