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

#include "ppcsim/ppcsim.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <fstream>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "../core/batch.hpp"
#include "../core/error.hpp"
#include "../core/trial.hpp"

struct ppc_config {
  ppcsim::SimConfig value;
};

struct ppc_trial {
  ppcsim::TrialRecord record;
};

struct ppc_batch {
  ppcsim::BatchResult result;
};

namespace {

thread_local std::string g_last_error;
thread_local double g_last_error_time = -1.0;

ppc_status fail(ppc_status status, const std::string& message, double t = -1.0) {
  g_last_error = message;
  g_last_error_time = t;
  return status;
}

// Runs `body`, translating exceptions into a status plus thread-local message.
template <typename Fn>
ppc_status guarded(Fn&& body) {
  g_last_error.clear();
  g_last_error_time = -1.0;
  try {
    body();
    return PPC_OK;
  } catch (const ppcsim::NonFiniteStateError& e) {
    return fail(PPC_ERR_NON_FINITE_STATE, e.what(), e.time());
  } catch (const ppcsim::Error& e) {
    return fail(static_cast<ppc_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(PPC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PPC_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(PPC_ERR_INTERNAL, "unknown failure");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw ppcsim::Error(ppcsim::ErrorCode::kInvalidArgument, what);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ppcsim::ControllerVariant variant_from(const char* name) {
  require(name != nullptr, "variant is null");
  const auto v = ppcsim::parse_variant(name);
  if (!v) {
    throw ppcsim::Error(ppcsim::ErrorCode::kInvalidArgument,
                        std::string("unknown variant '") + name + "'");
  }
  return *v;
}

void write_file(const char* path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ppcsim::Error(ppcsim::ErrorCode::kIo, std::string("cannot write ") + path);
  out << text;
  if (!out) throw ppcsim::Error(ppcsim::ErrorCode::kIo, std::string("write failed: ") + path);
}

}  // namespace

extern "C" {

const char* ppc_version(void) { return "0.1.0"; }

const char* ppc_status_name(ppc_status status) {
  if (status == PPC_OK) return "Ok";
  if (status == PPC_ERR_INTERNAL) return "Internal";
  if (status >= PPC_ERR_INVALID_ARGUMENT && status <= PPC_ERR_IO) {
    return ppcsim::error_code_name(static_cast<ppcsim::ErrorCode>(status)).data();
  }
  return "Unknown";
}

const char* ppc_last_error(void) { return g_last_error.c_str(); }

double ppc_last_error_time(void) { return g_last_error_time; }

void ppc_string_free(char* str) { std::free(str); }

ppc_status ppc_config_default(ppc_config** out) {
  return guarded([&] {
    require(out != nullptr, "out is null");
    *out = new ppc_config{ppcsim::default_config()};
  });
}

ppc_status ppc_config_load(const char* path, ppc_config** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new ppc_config{ppcsim::load_config(path)};
  });
}

ppc_status ppc_config_parse(const char* yaml_text, ppc_config** out) {
  return guarded([&] {
    require(yaml_text != nullptr && out != nullptr, "null argument");
    *out = new ppc_config{ppcsim::parse_config(yaml_text)};
  });
}

ppc_status ppc_config_serialize(const ppc_config* config, char** yaml_out) {
  return guarded([&] {
    require(config != nullptr && yaml_out != nullptr, "null argument");
    *yaml_out = dup_string(ppcsim::serialize_config(config->value));
  });
}

ppc_status ppc_config_save(const ppc_config* config, const char* path) {
  return guarded([&] {
    require(config != nullptr && path != nullptr, "null argument");
    write_file(path, ppcsim::serialize_config(config->value));
  });
}

ppc_status ppc_config_validate(const ppc_config* config, char** report_json) {
  return guarded([&] {
    require(config != nullptr, "config is null");
    std::string report = ppcsim::validation_report_json(config->value);
    if (report_json) *report_json = dup_string(report);
  });
}

ppc_status ppc_config_hash(const ppc_config* config, uint64_t* hash_out) {
  return guarded([&] {
    require(config != nullptr && hash_out != nullptr, "null argument");
    *hash_out = ppcsim::config_hash(config->value);
  });
}

void ppc_config_free(ppc_config* config) { delete config; }

ppc_status ppc_run_trial(const ppc_config* config, const char* scenario, const char* variant,
                         uint64_t seed, ppc_trial** out) {
  return guarded([&] {
    require(config != nullptr && scenario != nullptr && out != nullptr, "null argument");
    const ppcsim::ControllerVariant v = variant_from(variant);
    *out = new ppc_trial{ppcsim::run_trial(config->value, scenario, v, seed)};
  });
}

size_t ppc_trial_sample_count(const ppc_trial* trial) {
  return trial ? trial->record.rows.size() : 0;
}

ppc_status ppc_trial_csv(const ppc_trial* trial, char** csv_out) {
  return guarded([&] {
    require(trial != nullptr && csv_out != nullptr, "null argument");
    std::ostringstream os;
    ppcsim::write_csv(trial->record, os);
    *csv_out = dup_string(os.str());
  });
}

ppc_status ppc_trial_write_csv(const ppc_trial* trial, const char* path) {
  return guarded([&] {
    require(trial != nullptr && path != nullptr, "null argument");
    std::ostringstream os;
    ppcsim::write_csv(trial->record, os);
    write_file(path, os.str());
  });
}

ppc_status ppc_trial_summary_json(const ppc_trial* trial, char** json_out) {
  return guarded([&] {
    require(trial != nullptr && json_out != nullptr, "null argument");
    *json_out = dup_string(ppcsim::trial_summary_json(
        trial->record, ppcsim::compute_metrics(trial->record)));
  });
}

void ppc_trial_free(ppc_trial* trial) { delete trial; }

ppc_status ppc_check_csv(const char* path, char** report_json, uint64_t* violation_count) {
  return guarded([&] {
    require(path != nullptr, "path is null");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ppcsim::Error(ppcsim::ErrorCode::kIo, std::string("cannot open ") + path);
    const ppcsim::TrialRecord record = ppcsim::read_csv(in);
    const auto violations = ppcsim::check_envelope(record);
    if (report_json) *report_json = dup_string(ppcsim::envelope_report_json(record, violations));
    if (violation_count) *violation_count = violations.size();
  });
}

ppc_status ppc_run_batch(const ppc_config* config, const ppc_batch_spec* spec,
                         ppc_batch** out) {
  return guarded([&] {
    require(config != nullptr && spec != nullptr && out != nullptr, "null argument");
    require(spec->scenario_count == 0 || spec->scenarios != nullptr, "scenarios is null");
    require(spec->variant_count == 0 || spec->variants != nullptr, "variants is null");
    ppcsim::BatchSpec bs;
    for (size_t i = 0; i < spec->scenario_count; ++i) {
      require(spec->scenarios[i] != nullptr, "scenario name is null");
      bs.scenarios.emplace_back(spec->scenarios[i]);
    }
    for (size_t i = 0; i < spec->variant_count; ++i) {
      bs.variants.push_back(variant_from(spec->variants[i]));
    }
    bs.n_seeds = spec->seed_count;
    bs.first_seed = spec->first_seed;
    bs.workers = spec->workers;
    if (spec->trace_dir) bs.trace_dir = std::string(spec->trace_dir);
    *out = new ppc_batch{ppcsim::run_batch(config->value, bs)};
  });
}

ppc_status ppc_batch_json(const ppc_batch* batch, char** json_out) {
  return guarded([&] {
    require(batch != nullptr && json_out != nullptr, "null argument");
    *json_out = dup_string(ppcsim::batch_to_json(batch->result));
  });
}

ppc_status ppc_batch_from_json(const char* json_text, ppc_batch** out) {
  return guarded([&] {
    require(json_text != nullptr && out != nullptr, "null argument");
    *out = new ppc_batch{ppcsim::batch_from_json(json_text)};
  });
}

ppc_status ppc_batch_table(const ppc_batch* batch, char** table_out) {
  return guarded([&] {
    require(batch != nullptr && table_out != nullptr, "null argument");
    *table_out = dup_string(ppcsim::render_table(batch->result));
  });
}

void ppc_batch_free(ppc_batch* batch) { delete batch; }

}  // extern "C"
