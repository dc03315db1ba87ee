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

// Simulation configuration: YAML text with units spelled out in key names.
// serialize_config() emits every field with shortest round-trip number
// formatting, so parse(serialize(c)) reproduces c exactly.

#ifndef PPCSIM_CORE_CONFIG_HPP_
#define PPCSIM_CORE_CONFIG_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "arm_model.hpp"
#include "controllers.hpp"
#include "dynamics.hpp"
#include "reference.hpp"

namespace ppcsim {

inline constexpr int kConfigSchemaVersion = 1;

struct ScenarioConfig {
  std::string name;
  ReferenceSpec reference;
  double duration = 20.0;  // s
  bool arm_enabled = true;
  std::vector<ExternalForceEvent> forces;
};

struct ArmConfig {
  LumpedArmParams params = LumpedArmParams::default_chain();
  ArmTrajectoryProfile profile;
  // Peak end-effector speed the profile is scaled to; 0 keeps the
  // amplitudes as written.
  double target_peak_speed = 0.76;
  bool randomize_phase = true;  // per-seed joint phase offsets
};

struct SimConfig {
  int schema_version = kConfigSchemaVersion;
  double dt = 1e-3;                // s, plant and controller tick
  double convergence_time = 10.0;  // s, start of the sliding-bound audit
  double thrust_limit = 0.0;       // N, 0 disables saturation
  QuadParams quad;
  ControllerConfig controller;
  ArmConfig arm;
  NoiseConfig noise;
  std::vector<ScenarioConfig> scenarios;

  // Throws Error(kConfigInvalid) describing the first problem found.
  void validate() const;
  // Throws Error(kConfigInvalid) for unknown names.
  const ScenarioConfig& scenario(std::string_view name) const;
};

// Shipped defaults, identical to config/default.yaml.
SimConfig default_config();

// Throws Error(kConfigInvalid) on schema or value errors, Error(kIo) when the
// file cannot be read.
SimConfig parse_config(std::string_view yaml_text);
SimConfig load_config(const std::string& path);

std::string serialize_config(const SimConfig& config);

// FNV-1a over the serialized form.
std::uint64_t config_hash(const SimConfig& config);
std::string hash_hex(std::uint64_t hash);

// Shortest text that parses back to the same double.
std::string format_double(double value);

}  // namespace ppcsim

#endif  // PPCSIM_CORE_CONFIG_HPP_
