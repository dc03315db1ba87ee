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

// Exercises the shared library through its C header only.

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <string>

#include <gtest/gtest.h>

#include "ppcsim/ppcsim.h"

namespace {

std::string take(char* s) {
  std::string out = s != nullptr ? s : "";
  ppc_string_free(s);
  return out;
}

class CApi : public ::testing::Test {
 protected:
  void SetUp() override { ASSERT_EQ(ppc_config_default(&cfg), PPC_OK); }
  void TearDown() override { ppc_config_free(cfg); }
  ppc_config* cfg = nullptr;
};

TEST_F(CApi, VersionAndStatusNames) {
  EXPECT_GT(std::strlen(ppc_version()), 0u);
  EXPECT_STREQ(ppc_status_name(PPC_ERR_CONFIG_INVALID), "ConfigInvalid");
  EXPECT_STREQ(ppc_status_name(static_cast<ppc_status>(77)), "Unknown");
}

TEST_F(CApi, ConfigRoundTripKeepsHash) {
  char* yaml = nullptr;
  ASSERT_EQ(ppc_config_serialize(cfg, &yaml), PPC_OK);
  const std::string text = take(yaml);
  ppc_config* back = nullptr;
  ASSERT_EQ(ppc_config_parse(text.c_str(), &back), PPC_OK);
  uint64_t a = 0, b = 0;
  ASSERT_EQ(ppc_config_hash(cfg, &a), PPC_OK);
  ASSERT_EQ(ppc_config_hash(back, &b), PPC_OK);
  EXPECT_EQ(a, b);
  ppc_config_free(back);
}

TEST_F(CApi, ErrorsCarryCodeAndMessage) {
  ppc_config* bad = nullptr;
  EXPECT_EQ(ppc_config_parse("dt: [1", &bad), PPC_ERR_CONFIG_INVALID);
  EXPECT_EQ(bad, nullptr);
  EXPECT_GT(std::strlen(ppc_last_error()), 0u);
  EXPECT_EQ(ppc_config_load("/nonexistent/ppcsim.yaml", &bad), PPC_ERR_IO);
  EXPECT_EQ(ppc_config_default(nullptr), PPC_ERR_INVALID_ARGUMENT);
  ppc_trial* trial = nullptr;
  EXPECT_EQ(ppc_run_trial(cfg, "setpoint", "lqr", 1, &trial), PPC_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(ppc_run_trial(cfg, "nowhere", "pid", 1, &trial), PPC_ERR_CONFIG_INVALID);
  EXPECT_EQ(ppc_run_trial(nullptr, "hover", "pid", 1, &trial), PPC_ERR_INVALID_ARGUMENT);
}

TEST_F(CApi, TrialCsvAndCheck) {
  ppc_trial* trial = nullptr;
  ASSERT_EQ(ppc_run_trial(cfg, "hover", "proposed", 3, &trial), PPC_OK);
  EXPECT_EQ(ppc_trial_sample_count(trial), 10001u);  // 10 s at 1 ms
  const std::filesystem::path path = std::filesystem::temp_directory_path() / "ppcsim_capi.csv";
  ASSERT_EQ(ppc_trial_write_csv(trial, path.c_str()), PPC_OK);
  char* report = nullptr;
  uint64_t violations = 99;
  ASSERT_EQ(ppc_check_csv(path.c_str(), &report, &violations), PPC_OK);
  EXPECT_EQ(violations, 0u);
  EXPECT_NE(take(report).find("violations"), std::string::npos);
  char* summary = nullptr;
  ASSERT_EQ(ppc_trial_summary_json(trial, &summary), PPC_OK);
  EXPECT_NE(take(summary).find("\"seed\""), std::string::npos);
  ppc_trial_free(trial);
  std::filesystem::remove(path);
}

TEST_F(CApi, BatchJsonRoundTrip) {
  const char* scenarios[] = {"hover"};
  const char* variants[] = {"pid", "proposed"};
  ppc_batch_spec spec{scenarios, 1, variants, 2, 2, 1, 2, nullptr};
  ppc_batch* batch = nullptr;
  ASSERT_EQ(ppc_run_batch(cfg, &spec, &batch), PPC_OK);
  char* js = nullptr;
  ASSERT_EQ(ppc_batch_json(batch, &js), PPC_OK);
  const std::string text = take(js);
  ppc_batch* back = nullptr;
  ASSERT_EQ(ppc_batch_from_json(text.c_str(), &back), PPC_OK);
  char* t1 = nullptr;
  char* t2 = nullptr;
  ASSERT_EQ(ppc_batch_table(batch, &t1), PPC_OK);
  ASSERT_EQ(ppc_batch_table(back, &t2), PPC_OK);
  EXPECT_EQ(take(t1), take(t2));
  ppc_batch_free(back);
  ppc_batch_free(batch);
  spec.seed_count = 0;
  EXPECT_EQ(ppc_run_batch(cfg, &spec, &batch), PPC_ERR_INVALID_ARGUMENT);
}

}  // namespace
