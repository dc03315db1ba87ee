/* Copyright 2026 The ppcsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the ppcsim simulator.
 *
 * Every fallible call returns a ppc_status. On failure, ppc_last_error()
 * returns a message for the calling thread; it stays valid until the next
 * call into the library from that thread. Strings handed out through char**
 * parameters are owned by the caller and released with ppc_string_free.
 * Handles are not shared between threads by the library; a const handle may
 * be read from several threads at once. */

#ifndef PPCSIM_PPCSIM_H_
#define PPCSIM_PPCSIM_H_

#include <stddef.h>
#include <stdint.h>

#if defined(PPCSIM_BUILDING_LIBRARY)
#define PPC_API __attribute__((visibility("default")))
#else
#define PPC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ppc_status {
  PPC_OK = 0,
  PPC_ERR_INVALID_ARGUMENT = 1,
  PPC_ERR_NON_SKEW_INPUT = 2,
  PPC_ERR_NEAR_SINGULAR_ATTITUDE = 3,
  PPC_ERR_NEGATIVE_TIME = 4,
  PPC_ERR_INFEASIBLE_ENVELOPE = 5,
  PPC_ERR_NON_FINITE_STATE = 6,
  PPC_ERR_DEGENERATE_THRUST = 7,
  PPC_ERR_YAW_ALIGNMENT_SINGULARITY = 8,
  PPC_ERR_INSUFFICIENT_HISTORY = 9,
  PPC_ERR_CONFIG_INVALID = 10,
  PPC_ERR_IO = 11,
  PPC_ERR_INTERNAL = 100
} ppc_status;

typedef struct ppc_config ppc_config;
typedef struct ppc_trial ppc_trial;
typedef struct ppc_batch ppc_batch;

PPC_API const char* ppc_version(void);
/* Stable identifier such as "ConfigInvalid"; "Unknown" for other values. */
PPC_API const char* ppc_status_name(ppc_status status);
/* Message of the last failed call on this thread, "" if none. */
PPC_API const char* ppc_last_error(void);
/* Simulation time of the last PPC_ERR_NON_FINITE_STATE on this thread, or a
 * negative value when the last failure carried no time. */
PPC_API double ppc_last_error_time(void);
PPC_API void ppc_string_free(char* str);

/* ---- configuration ---------------------------------------------------- */

PPC_API ppc_status ppc_config_default(ppc_config** out);
PPC_API ppc_status ppc_config_load(const char* path, ppc_config** out);
PPC_API ppc_status ppc_config_parse(const char* yaml_text, ppc_config** out);
PPC_API ppc_status ppc_config_serialize(const ppc_config* config, char** yaml_out);
PPC_API ppc_status ppc_config_save(const ppc_config* config, const char* path);
/* Validates the config and audits the preset-trajectory c of every scenario.
 * A failing audit is reported in the JSON, not as an error status. */
PPC_API ppc_status ppc_config_validate(const ppc_config* config, char** report_json);
PPC_API ppc_status ppc_config_hash(const ppc_config* config, uint64_t* hash_out);
PPC_API void ppc_config_free(ppc_config* config);

/* ---- single trials ------------------------------------------------------ */

/* variant: "proposed", "pid", "no_eso" or "no_preset". */
PPC_API ppc_status ppc_run_trial(const ppc_config* config, const char* scenario,
                                 const char* variant, uint64_t seed, ppc_trial** out);
PPC_API size_t ppc_trial_sample_count(const ppc_trial* trial);
PPC_API ppc_status ppc_trial_csv(const ppc_trial* trial, char** csv_out);
PPC_API ppc_status ppc_trial_write_csv(const ppc_trial* trial, const char* path);
PPC_API ppc_status ppc_trial_summary_json(const ppc_trial* trial, char** json_out);
PPC_API void ppc_trial_free(ppc_trial* trial);

/* Envelope audit of a trial CSV. The report lists every violating sample;
 * violations are data, so the status is PPC_OK whenever the file parses. */
PPC_API ppc_status ppc_check_csv(const char* path, char** report_json,
                                 uint64_t* violation_count);

/* ---- batches ------------------------------------------------------------ */

typedef struct ppc_batch_spec {
  const char* const* scenarios;
  size_t scenario_count;
  const char* const* variants;
  size_t variant_count;
  int seed_count;
  uint64_t first_seed;
  int workers;
  const char* trace_dir; /* NULL disables per-trial CSV output */
} ppc_batch_spec;

PPC_API ppc_status ppc_run_batch(const ppc_config* config, const ppc_batch_spec* spec,
                                 ppc_batch** out);
PPC_API ppc_status ppc_batch_json(const ppc_batch* batch, char** json_out);
PPC_API ppc_status ppc_batch_from_json(const char* json_text, ppc_batch** out);
PPC_API ppc_status ppc_batch_table(const ppc_batch* batch, char** table_out);
PPC_API void ppc_batch_free(ppc_batch* batch);

#ifdef __cplusplus
}
#endif

#endif /* PPCSIM_PPCSIM_H_ */
