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

#include "config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include "error.hpp"

namespace ppcsim {

std::string format_double(double value) {
  if (value == 0.0) return "0";  // folds -0
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::kConfigInvalid, where + ": " + what);
}

// ---- reading ---------------------------------------------------------------

void check_keys(const YAML::Node& node, const std::string& where,
                std::initializer_list<std::string_view> allowed) {
  if (!node.IsMap()) fail(where, "expected a mapping");
  for (const auto& kv : node) {
    const std::string key = kv.first.as<std::string>();
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      fail(where, "unknown key '" + key + "'");
    }
  }
}

YAML::Node need(const YAML::Node& node, const std::string& where, const char* key) {
  YAML::Node child = node[key];
  if (!child) fail(where, std::string("missing key '") + key + "'");
  return child;
}

double read_double(const YAML::Node& node, const std::string& where, const char* key) {
  const YAML::Node v = need(node, where, key);
  const std::string text = v.as<std::string>();
  double out = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), out);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || !std::isfinite(out)) {
    fail(where + "." + key, "not a finite number: '" + text + "'");
  }
  return out;
}

bool read_bool(const YAML::Node& node, const std::string& where, const char* key) {
  const YAML::Node v = need(node, where, key);
  try {
    return v.as<bool>();
  } catch (const YAML::Exception&) {
    fail(where + "." + key, "expected true/false");
  }
}

Vec3 read_vec3(const YAML::Node& node, const std::string& where, const char* key) {
  const YAML::Node v = need(node, where, key);
  if (!v.IsSequence() || v.size() != 3) fail(where + "." + key, "expected a 3-element list");
  Vec3 out;
  for (std::size_t i = 0; i < 3; ++i) {
    const std::string text = v[i].as<std::string>();
    const auto res = std::from_chars(text.data(), text.data() + text.size(), out[i]);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size() ||
        !std::isfinite(out[i])) {
      fail(where + "." + key, "not a finite number: '" + text + "'");
    }
  }
  return out;
}

Mat3 read_mat3(const YAML::Node& node, const std::string& where, const char* key) {
  const YAML::Node v = need(node, where, key);
  if (!v.IsSequence() || v.size() != 3) fail(where + "." + key, "expected 3 rows");
  Mat3 out;
  for (int r = 0; r < 3; ++r) {
    YAML::Node holder;
    holder["row"] = v[r];
    out.row(r) = read_vec3(holder, where + "." + key, "row").transpose();
  }
  return out;
}

void read_eso(const YAML::Node& node, const std::string& where,
              const GainFunctionParams& gain, std::array<EsoParams, 3>& eso) {
  const Vec3 alpha = read_vec3(node, where, "eso_alpha_per_s");
  const Vec3 eps = read_vec3(node, where, "eso_epsilon");
  for (int i = 0; i < 3; ++i) eso[i] = EsoParams{alpha[i], eps[i], gain};
}

void read_envelope(const YAML::Node& node, const std::string& where, const char* unit,
                   PerformanceEnvelope& env, Vec3& c) {
  env.rho0 = read_vec3(node, where, (std::string("rho0_") + unit).c_str());
  env.rho_inf = read_vec3(node, where, (std::string("rho_inf_") + unit).c_str());
  env.decay_rate = read_double(node, where, "decay_per_s");
  c = read_vec3(node, where, "c_per_s");
}

ScenarioConfig read_scenario(const YAML::Node& node, const std::string& where) {
  check_keys(node, where,
             {"name", "reference", "duration_s", "arm_enabled", "start_m", "target_m",
              "radius_m", "period_s", "eight_x_amplitude_m", "eight_y_amplitude_m",
              "lead_in_s", "pull_start_s", "pull_stop_s", "pull_speed_m_per_s", "pull_ramp_s",
              "forces"});
  ScenarioConfig sc;
  sc.name = need(node, where, "name").as<std::string>();
  const std::string kind = need(node, where, "reference").as<std::string>();
  const auto parsed = parse_reference_kind(kind);
  if (!parsed) fail(where + ".reference", "unknown reference '" + kind + "'");
  ReferenceSpec& ref = sc.reference;
  ref.kind = *parsed;
  sc.duration = read_double(node, where, "duration_s");
  sc.arm_enabled = read_bool(node, where, "arm_enabled");
  ref.start = read_vec3(node, where, "start_m");
  ref.target = read_vec3(node, where, "target_m");
  ref.radius = read_double(node, where, "radius_m");
  ref.period = read_double(node, where, "period_s");
  ref.eight_x_amplitude = read_double(node, where, "eight_x_amplitude_m");
  ref.eight_y_amplitude = read_double(node, where, "eight_y_amplitude_m");
  ref.lead_in = read_double(node, where, "lead_in_s");
  ref.pull_start = read_double(node, where, "pull_start_s");
  ref.pull_stop = read_double(node, where, "pull_stop_s");
  ref.pull_speed = read_double(node, where, "pull_speed_m_per_s");
  ref.pull_ramp = read_double(node, where, "pull_ramp_s");
  const YAML::Node forces = need(node, where, "forces");
  if (!forces.IsSequence()) fail(where + ".forces", "expected a list");
  for (std::size_t i = 0; i < forces.size(); ++i) {
    const std::string fw = where + ".forces[" + std::to_string(i) + "]";
    check_keys(forces[i], fw, {"start_s", "stop_s", "force_n", "point_m"});
    ExternalForceEvent ev;
    ev.start = read_double(forces[i], fw, "start_s");
    ev.stop = read_double(forces[i], fw, "stop_s");
    ev.force = read_vec3(forces[i], fw, "force_n");
    ev.application_point = read_vec3(forces[i], fw, "point_m");
    sc.forces.push_back(ev);
  }
  return sc;
}

SimConfig from_yaml(const YAML::Node& root) {
  check_keys(root, "config",
             {"schema_version", "simulation", "vehicle", "eso_gain", "position", "attitude",
              "pid", "arm", "noise", "scenarios"});
  SimConfig cfg;
  const YAML::Node version = need(root, "config", "schema_version");
  cfg.schema_version = version.as<int>();
  if (cfg.schema_version != kConfigSchemaVersion) {
    fail("config.schema_version", "unsupported version " + std::to_string(cfg.schema_version));
  }

  const YAML::Node sim = need(root, "config", "simulation");
  check_keys(sim, "simulation",
             {"dt_s", "convergence_time_s", "thrust_limit_n", "enforce_c_bound"});
  cfg.dt = read_double(sim, "simulation", "dt_s");
  cfg.convergence_time = read_double(sim, "simulation", "convergence_time_s");
  cfg.thrust_limit = read_double(sim, "simulation", "thrust_limit_n");
  cfg.controller.enforce_c_bound = read_bool(sim, "simulation", "enforce_c_bound");

  const YAML::Node veh = need(root, "config", "vehicle");
  check_keys(veh, "vehicle",
             {"base_mass_kg", "arm_mass_kg", "inertia_kg_m2", "gravity_m_per_s2"});
  cfg.quad.base_mass = read_double(veh, "vehicle", "base_mass_kg");
  cfg.quad.arm_mass = read_double(veh, "vehicle", "arm_mass_kg");
  cfg.quad.inertia = read_mat3(veh, "vehicle", "inertia_kg_m2");
  cfg.quad.gravity = read_double(veh, "vehicle", "gravity_m_per_s2");

  const YAML::Node gain_node = need(root, "config", "eso_gain");
  check_keys(gain_node, "eso_gain", {"w", "d"});
  const GainFunctionParams gain{read_double(gain_node, "eso_gain", "w"),
                                read_double(gain_node, "eso_gain", "d")};

  const YAML::Node pos = need(root, "config", "position");
  check_keys(pos, "position",
             {"lambda_per_s", "k_per_s", "rho0_m", "rho_inf_m", "decay_per_s", "c_per_s",
              "eso_alpha_per_s", "eso_epsilon", "deviation_bound_m_per_s2"});
  PositionCtlConfig& pc = cfg.controller.position;
  pc.lambda = read_vec3(pos, "position", "lambda_per_s");
  pc.k = read_vec3(pos, "position", "k_per_s");
  read_envelope(pos, "position", "m", pc.envelope, pc.c);
  read_eso(pos, "position", gain, pc.eso);
  pc.deviation_bound = read_double(pos, "position", "deviation_bound_m_per_s2");

  const YAML::Node att = need(root, "config", "attitude");
  check_keys(att, "attitude",
             {"lambda_per_s2", "k_per_s2", "rho0", "rho_inf", "decay_per_s", "c_per_s",
              "eso_alpha_per_s", "eso_epsilon", "deviation_bound_rad_per_s2"});
  AttitudeCtlConfig& ac = cfg.controller.attitude;
  ac.lambda = read_vec3(att, "attitude", "lambda_per_s2");
  ac.k = read_vec3(att, "attitude", "k_per_s2");
  ac.envelope.rho0 = read_vec3(att, "attitude", "rho0");
  ac.envelope.rho_inf = read_vec3(att, "attitude", "rho_inf");
  ac.envelope.decay_rate = read_double(att, "attitude", "decay_per_s");
  ac.c = read_vec3(att, "attitude", "c_per_s");
  read_eso(att, "attitude", gain, ac.eso);
  ac.deviation_bound = read_double(att, "attitude", "deviation_bound_rad_per_s2");

  const YAML::Node pid = need(root, "config", "pid");
  check_keys(pid, "pid",
             {"pos_p_per_s", "vel_p_per_s", "vel_i_per_s2", "vel_d", "att_p_per_s",
              "rate_p_per_s", "rate_i_per_s2", "rate_d", "derivative_cutoff_hz",
              "integrator_limit"});
  PidGains& g = cfg.controller.pid;
  g.pos_p = read_vec3(pid, "pid", "pos_p_per_s");
  g.vel_p = read_vec3(pid, "pid", "vel_p_per_s");
  g.vel_i = read_vec3(pid, "pid", "vel_i_per_s2");
  g.vel_d = read_vec3(pid, "pid", "vel_d");
  g.att_p = read_vec3(pid, "pid", "att_p_per_s");
  g.rate_p = read_vec3(pid, "pid", "rate_p_per_s");
  g.rate_i = read_vec3(pid, "pid", "rate_i_per_s2");
  g.rate_d = read_vec3(pid, "pid", "rate_d");
  g.derivative_cutoff_hz = read_double(pid, "pid", "derivative_cutoff_hz");
  g.integrator_limit = read_double(pid, "pid", "integrator_limit");

  const YAML::Node arm = need(root, "config", "arm");
  check_keys(arm, "arm",
             {"equivalent_mass_kg", "mount_offset_m", "target_peak_speed_m_per_s",
              "randomize_phase", "servo_time_constant_s", "joints"});
  cfg.arm.params.equivalent_mass = read_double(arm, "arm", "equivalent_mass_kg");
  cfg.arm.params.mount_offset = read_vec3(arm, "arm", "mount_offset_m");
  cfg.arm.target_peak_speed = read_double(arm, "arm", "target_peak_speed_m_per_s");
  cfg.arm.randomize_phase = read_bool(arm, "arm", "randomize_phase");
  cfg.arm.profile.servo_time_constant = read_double(arm, "arm", "servo_time_constant_s");
  const YAML::Node joints = need(arm, "arm", "joints");
  if (!joints.IsSequence() || joints.size() != kArmJoints) {
    fail("arm.joints", "expected exactly six joints");
  }
  for (int j = 0; j < kArmJoints; ++j) {
    const std::string jw = "arm.joints[" + std::to_string(j) + "]";
    const YAML::Node jn = joints[j];
    check_keys(jn, jw,
               {"axis", "link_m", "amplitude_rad", "frequency_hz", "phase_rad",
                "offset_rad"});
    cfg.arm.params.links[j].axis = read_vec3(jn, jw, "axis");
    cfg.arm.params.links[j].length = read_vec3(jn, jw, "link_m");
    JointSinusoid& s = cfg.arm.profile.joints[j];
    s.amplitude = read_double(jn, jw, "amplitude_rad");
    s.frequency_hz = read_double(jn, jw, "frequency_hz");
    s.phase = read_double(jn, jw, "phase_rad");
    s.offset = read_double(jn, jw, "offset_rad");
  }

  const YAML::Node noise = need(root, "config", "noise");
  check_keys(noise, "noise", {"velocity_std_m_per_s", "angular_velocity_std_rad_per_s"});
  cfg.noise.velocity_std = read_double(noise, "noise", "velocity_std_m_per_s");
  cfg.noise.angular_velocity_std =
      read_double(noise, "noise", "angular_velocity_std_rad_per_s");

  const YAML::Node scen = need(root, "config", "scenarios");
  if (!scen.IsSequence() || scen.size() == 0) fail("scenarios", "expected a non-empty list");
  for (std::size_t i = 0; i < scen.size(); ++i) {
    cfg.scenarios.push_back(read_scenario(scen[i], "scenarios[" + std::to_string(i) + "]"));
  }
  return cfg;
}

// ---- writing ---------------------------------------------------------------

std::string vec(const Vec3& v) {
  return "[" + format_double(v[0]) + ", " + format_double(v[1]) + ", " +
         format_double(v[2]) + "]";
}

std::string eso_field(const std::array<EsoParams, 3>& eso, bool alpha) {
  Vec3 v;
  for (int i = 0; i < 3; ++i) v[i] = alpha ? eso[i].alpha : eso[i].epsilon;
  return vec(v);
}

const char* boolean(bool b) { return b ? "true" : "false"; }

}  // namespace

void SimConfig::validate() const {
  if (schema_version != kConfigSchemaVersion) {
    throw Error(ErrorCode::kConfigInvalid, "unsupported schema version");
  }
  if (!(dt > 0.0) || dt > 0.01) {
    throw Error(ErrorCode::kConfigInvalid, "simulation.dt_s must lie in (0, 0.01]");
  }
  if (!(convergence_time >= 0.0) || !(thrust_limit >= 0.0)) {
    throw Error(ErrorCode::kConfigInvalid, "simulation times/limits must be >= 0");
  }
  auto wrap = [](const char* where, auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      throw Error(ErrorCode::kConfigInvalid, std::string(where) + ": " + e.what());
    }
  };
  wrap("vehicle", [&] { quad.validate(); });
  wrap("position", [&] { controller.position.validate(); });
  wrap("attitude", [&] { controller.attitude.validate(); });
  wrap("pid", [&] { controller.pid.validate(); });
  wrap("arm", [&] {
    arm.params.validate(quad);
    arm.profile.validate();
    if (!(arm.target_peak_speed >= 0.0)) {
      throw Error(ErrorCode::kConfigInvalid, "target peak speed must be >= 0");
    }
  });
  if (!(noise.velocity_std >= 0.0) || !(noise.angular_velocity_std >= 0.0)) {
    throw Error(ErrorCode::kConfigInvalid, "noise deviations must be >= 0");
  }
  const GainFunctionParams& g0 = controller.position.eso[0].gain;
  for (const auto* set : {&controller.position.eso, &controller.attitude.eso}) {
    for (const EsoParams& p : *set) {
      if (p.gain.w != g0.w || p.gain.d != g0.d) {
        throw Error(ErrorCode::kConfigInvalid, "all observers share one gain function");
      }
    }
  }
  std::set<std::string> names;
  for (const ScenarioConfig& sc : scenarios) {
    const bool ok_name =
        !sc.name.empty() && std::all_of(sc.name.begin(), sc.name.end(), [](char ch) {
          return (ch >= 'a' && ch <= 'z') || (ch >= '0' && ch <= '9') || ch == '_';
        });
    if (!ok_name) {
      throw Error(ErrorCode::kConfigInvalid, "scenario names use [a-z0-9_] only");
    }
    if (!names.insert(sc.name).second) {
      throw Error(ErrorCode::kConfigInvalid, "duplicate scenario '" + sc.name + "'");
    }
    if (!(sc.duration > 0.0)) {
      throw Error(ErrorCode::kConfigInvalid, "scenario '" + sc.name + "': duration must be > 0");
    }
    wrap(sc.name.c_str(), [&] {
      sc.reference.validate();
      for (const ExternalForceEvent& ev : sc.forces) ev.validate();
    });
  }
}

const ScenarioConfig& SimConfig::scenario(std::string_view name) const {
  for (const ScenarioConfig& sc : scenarios) {
    if (sc.name == name) return sc;
  }
  throw Error(ErrorCode::kConfigInvalid, "unknown scenario '" + std::string(name) + "'");
}

SimConfig default_config() {
  SimConfig cfg;
  // The shipped attitude c fails the sufficient audit for the setpoint's
  // initial tilt; trials still run and the audit is reported per trial.
  cfg.controller.enforce_c_bound = false;
  ArmTrajectoryProfile& prof = cfg.arm.profile;
  prof.servo_time_constant = 0.03;
  // Fast swing: yaw sweep, shoulder/elbow pumping, wrist twirl.
  prof.joints = {{
      {0.6, 0.5, 0.0, 0.0},
      {0.45, 0.8, 0.0, -1.2},
      {0.6, 0.8, 1.0, -0.7},
      {0.18, 1.0, 0.0, 0.0},
      {0.18, 1.0, 0.5, 0.0},
      {0.22, 1.2, 0.0, 0.0},
  }};

  ScenarioConfig hover;
  hover.name = "hover";
  hover.reference.kind = ReferenceKind::kHover;
  hover.duration = 10.0;
  hover.arm_enabled = false;

  ScenarioConfig setpoint;
  setpoint.name = "setpoint";
  setpoint.reference.kind = ReferenceKind::kSetpoint;
  setpoint.duration = 20.0;

  ScenarioConfig circle;
  circle.name = "circle";
  circle.reference.kind = ReferenceKind::kCircle;
  circle.duration = 32.0;

  ScenarioConfig eight;
  eight.name = "figure_eight";
  eight.reference.kind = ReferenceKind::kFigureEight;
  eight.duration = 32.0;

  ScenarioConfig cart;
  cart.name = "cart_pull";
  cart.reference.kind = ReferenceKind::kCartPull;
  cart.duration = 25.0;
  cart.arm_enabled = false;
  // The cart stays attached once hooked, so the load persists past the end.
  ExternalForceEvent pull;
  pull.start = 5.0;
  pull.stop = 30.0;
  pull.force = Vec3(0.0, 10.0, 0.0);
  pull.application_point = Vec3(0.0, 0.0, 0.4);
  cart.forces.push_back(pull);

  cfg.scenarios = {hover, setpoint, circle, eight, cart};
  return cfg;
}

SimConfig parse_config(std::string_view yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml_text));
  } catch (const YAML::Exception& e) {
    throw Error(ErrorCode::kConfigInvalid, std::string("YAML parse error: ") + e.what());
  }
  SimConfig cfg;
  try {
    cfg = from_yaml(root);
  } catch (const YAML::Exception& e) {
    throw Error(ErrorCode::kConfigInvalid, std::string("config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

SimConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const SimConfig& cfg) {
  std::ostringstream os;
  const PositionCtlConfig& pc = cfg.controller.position;
  const AttitudeCtlConfig& ac = cfg.controller.attitude;
  const PidGains& g = cfg.controller.pid;
  os << "schema_version: " << cfg.schema_version << "\n\n";
  os << "simulation:\n"
     << "  dt_s: " << format_double(cfg.dt) << "\n"
     << "  convergence_time_s: " << format_double(cfg.convergence_time) << "\n"
     << "  thrust_limit_n: " << format_double(cfg.thrust_limit) << "\n"
     << "  enforce_c_bound: " << boolean(cfg.controller.enforce_c_bound) << "\n\n";
  os << "vehicle:\n"
     << "  base_mass_kg: " << format_double(cfg.quad.base_mass) << "\n"
     << "  arm_mass_kg: " << format_double(cfg.quad.arm_mass) << "\n"
     << "  inertia_kg_m2:\n";
  for (int r = 0; r < 3; ++r) {
    os << "    - " << vec(cfg.quad.inertia.row(r).transpose()) << "\n";
  }
  os << "  gravity_m_per_s2: " << format_double(cfg.quad.gravity) << "\n\n";
  os << "eso_gain:\n"
     << "  w: " << format_double(pc.eso[0].gain.w) << "\n"
     << "  d: " << format_double(pc.eso[0].gain.d) << "\n\n";
  os << "position:\n"
     << "  lambda_per_s: " << vec(pc.lambda) << "\n"
     << "  k_per_s: " << vec(pc.k) << "\n"
     << "  rho0_m: " << vec(pc.envelope.rho0) << "\n"
     << "  rho_inf_m: " << vec(pc.envelope.rho_inf) << "\n"
     << "  decay_per_s: " << format_double(pc.envelope.decay_rate) << "\n"
     << "  c_per_s: " << vec(pc.c) << "\n"
     << "  eso_alpha_per_s: " << eso_field(pc.eso, true) << "\n"
     << "  eso_epsilon: " << eso_field(pc.eso, false) << "\n"
     << "  deviation_bound_m_per_s2: " << format_double(pc.deviation_bound) << "\n\n";
  os << "attitude:\n"
     << "  lambda_per_s2: " << vec(ac.lambda) << "\n"
     << "  k_per_s2: " << vec(ac.k) << "\n"
     << "  rho0: " << vec(ac.envelope.rho0) << "\n"
     << "  rho_inf: " << vec(ac.envelope.rho_inf) << "\n"
     << "  decay_per_s: " << format_double(ac.envelope.decay_rate) << "\n"
     << "  c_per_s: " << vec(ac.c) << "\n"
     << "  eso_alpha_per_s: " << eso_field(ac.eso, true) << "\n"
     << "  eso_epsilon: " << eso_field(ac.eso, false) << "\n"
     << "  deviation_bound_rad_per_s2: " << format_double(ac.deviation_bound) << "\n\n";
  os << "pid:\n"
     << "  pos_p_per_s: " << vec(g.pos_p) << "\n"
     << "  vel_p_per_s: " << vec(g.vel_p) << "\n"
     << "  vel_i_per_s2: " << vec(g.vel_i) << "\n"
     << "  vel_d: " << vec(g.vel_d) << "\n"
     << "  att_p_per_s: " << vec(g.att_p) << "\n"
     << "  rate_p_per_s: " << vec(g.rate_p) << "\n"
     << "  rate_i_per_s2: " << vec(g.rate_i) << "\n"
     << "  rate_d: " << vec(g.rate_d) << "\n"
     << "  derivative_cutoff_hz: " << format_double(g.derivative_cutoff_hz) << "\n"
     << "  integrator_limit: " << format_double(g.integrator_limit) << "\n\n";
  os << "arm:\n"
     << "  equivalent_mass_kg: " << format_double(cfg.arm.params.equivalent_mass) << "\n"
     << "  mount_offset_m: " << vec(cfg.arm.params.mount_offset) << "\n"
     << "  target_peak_speed_m_per_s: " << format_double(cfg.arm.target_peak_speed) << "\n"
     << "  randomize_phase: " << boolean(cfg.arm.randomize_phase) << "\n"
     << "  servo_time_constant_s: " << format_double(cfg.arm.profile.servo_time_constant)
     << "\n"
     << "  joints:\n";
  for (int j = 0; j < kArmJoints; ++j) {
    const ArmLink& link = cfg.arm.params.links[j];
    const JointSinusoid& s = cfg.arm.profile.joints[j];
    os << "    - axis: " << vec(link.axis) << "\n"
       << "      link_m: " << vec(link.length) << "\n"
       << "      amplitude_rad: " << format_double(s.amplitude) << "\n"
       << "      frequency_hz: " << format_double(s.frequency_hz) << "\n"
       << "      phase_rad: " << format_double(s.phase) << "\n"
       << "      offset_rad: " << format_double(s.offset) << "\n";
  }
  os << "\nnoise:\n"
     << "  velocity_std_m_per_s: " << format_double(cfg.noise.velocity_std) << "\n"
     << "  angular_velocity_std_rad_per_s: "
     << format_double(cfg.noise.angular_velocity_std) << "\n\n";
  os << "scenarios:\n";
  for (const ScenarioConfig& sc : cfg.scenarios) {
    const ReferenceSpec& r = sc.reference;
    os << "  - name: " << sc.name << "\n"
       << "    reference: " << reference_kind_name(r.kind) << "\n"
       << "    duration_s: " << format_double(sc.duration) << "\n"
       << "    arm_enabled: " << boolean(sc.arm_enabled) << "\n"
       << "    start_m: " << vec(r.start) << "\n"
       << "    target_m: " << vec(r.target) << "\n"
       << "    radius_m: " << format_double(r.radius) << "\n"
       << "    period_s: " << format_double(r.period) << "\n"
       << "    eight_x_amplitude_m: " << format_double(r.eight_x_amplitude) << "\n"
       << "    eight_y_amplitude_m: " << format_double(r.eight_y_amplitude) << "\n"
       << "    lead_in_s: " << format_double(r.lead_in) << "\n"
       << "    pull_start_s: " << format_double(r.pull_start) << "\n"
       << "    pull_stop_s: " << format_double(r.pull_stop) << "\n"
       << "    pull_speed_m_per_s: " << format_double(r.pull_speed) << "\n"
       << "    pull_ramp_s: " << format_double(r.pull_ramp) << "\n";
    if (sc.forces.empty()) {
      os << "    forces: []\n";
    } else {
      os << "    forces:\n";
      for (const ExternalForceEvent& ev : sc.forces) {
        os << "      - start_s: " << format_double(ev.start) << "\n"
           << "        stop_s: " << format_double(ev.stop) << "\n"
           << "        force_n: " << vec(ev.force) << "\n"
           << "        point_m: " << vec(ev.application_point) << "\n";
      }
    }
  }
  return os.str();
}

std::uint64_t config_hash(const SimConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char ch : serialize_config(config)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hash_hex(std::uint64_t hash) {
  char buf[17];
  const auto res = std::to_chars(buf, buf + sizeof(buf), hash, 16);
  std::string out(buf, res.ptr);
  return std::string(16 - out.size(), '0') + out;
}

}  // namespace ppcsim
