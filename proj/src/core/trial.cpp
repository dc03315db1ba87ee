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

#include "trial.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "error.hpp"

namespace ppcsim {

namespace {

// Portable [0, 1) draw; std distributions differ between standard libraries.
double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Eigen::Vector4d to_quat(const Rotation& r) {
  Eigen::Quaterniond q(r.matrix());
  if (q.w() < 0.0) q.coeffs() = -q.coeffs();
  return Eigen::Vector4d(q.w(), q.x(), q.y(), q.z());
}

CouplingSample add(const CouplingSample& a, const CouplingSample& b) {
  return CouplingSample{a.delta_v + b.delta_v, a.delta_omega + b.delta_omega};
}

}  // namespace

ArmTrajectoryProfile trial_arm_profile(const SimConfig& config, double horizon,
                                       std::uint64_t seed, ArmMetadata* meta) {
  ArmTrajectoryProfile profile = config.arm.profile;
  ArmMetadata local;
  if (config.arm.randomize_phase) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    for (int j = 0; j < kArmJoints; ++j) {
      local.phase_offsets[j] = 2.0 * std::numbers::pi * unit_draw(rng);
      profile.joints[j].phase += local.phase_offsets[j];
    }
  }
  local.scale = 1.0;
  if (config.arm.target_peak_speed > 0.0) {
    const ArmTrajectoryProfile scaled = scale_profile_to_speed(
        profile, config.arm.params, config.arm.target_peak_speed, horizon, config.dt);
    double ref = 0.0;
    double now = 0.0;
    for (int j = 0; j < kArmJoints; ++j) {
      if (std::abs(profile.joints[j].amplitude) > std::abs(ref)) {
        ref = profile.joints[j].amplitude;
        now = scaled.joints[j].amplitude;
      }
    }
    local.scale = ref != 0.0 ? now / ref : 0.0;
    profile = scaled;
  }
  local.stats = arm_motion_stats(profile, config.arm.params, horizon, config.dt);
  if (meta) *meta = local;
  return profile;
}

TrialRecord run_trial(const SimConfig& config, const std::string& scenario_name,
                      ControllerVariant variant, std::uint64_t seed,
                      const TrialOptions& options) {
  config.validate();
  const ScenarioConfig& sc = config.scenario(scenario_name);
  const QuadParams& quad = config.quad;
  const double dt = config.dt;
  const auto ticks = static_cast<long>(std::llround(sc.duration / dt));

  TrialRecord rec;
  rec.scenario = sc.name;
  rec.variant = variant;
  rec.seed = seed;
  rec.config_hash = config_hash(config);
  rec.dt = dt;
  rec.convergence_time = config.convergence_time;
  rec.rho_p_inf = config.controller.position.envelope.rho_inf;

  const bool arm_on = options.arm_enabled.value_or(sc.arm_enabled) &&
                      config.arm.params.equivalent_mass > 0.0;
  ArmTrajectoryProfile profile;
  if (arm_on) {
    ArmMetadata meta;
    profile = trial_arm_profile(config, sc.duration, seed, &meta);
    rec.arm = meta;
  }

  auto coupling = [&](double t, const RigidBodyState& s) {
    CouplingSample c;
    if (arm_on) {
      c = coupling_from_arm(config.arm.params, joint_state_at(profile, t), s, quad);
    }
    for (const ExternalForceEvent& ev : sc.forces) {
      c = add(c, external_force_coupling(ev, s, quad, t));
    }
    return c;
  };

  std::unique_ptr<Controller> ctl = make_controller(variant, config.controller, quad, dt);
  const auto* ppc = dynamic_cast<const PrescribedPerformanceController*>(ctl.get());

  std::mt19937_64 noise_rng(seed);
  RigidBodyState state;
  state.p = sc.reference.start;

  const PerformanceEnvelope& env_p = config.controller.position.envelope;
  const PerformanceEnvelope& env_q = config.controller.attitude.envelope;
  const double m = quad.total_mass();

  rec.rows.reserve(static_cast<std::size_t>(ticks) + 1);
  for (long k = 0; k <= ticks; ++k) {
    const double t = static_cast<double>(k) * dt;
    const ReferenceSignal ref = reference_at(sc.reference, t);
    const RigidBodyState measured = add_measurement_noise(state, config.noise, noise_rng);
    ControlCommand cmd = ctl->step(t, measured, ref);
    if (config.thrust_limit > 0.0) cmd.thrust = std::min(cmd.thrust, config.thrust_limit);
    const ControllerDiagnostics& d = ctl->diagnostics();
    const CouplingSample truth = coupling(t, state);

    TickRow row;
    row.t = t;
    row.p = state.p;
    row.v = state.v;
    row.omega = state.omega;
    row.quat = to_quat(state.R);
    row.p_d = ref.p_d;
    row.position_error = state.p - ref.p_d;
    row.rho_p = rho_at(env_p, t);
    row.beta_p = d.beta_p;
    row.z_p = d.z_p;
    row.s_p = d.s_p;
    row.qv = d.qv;
    row.rho_q = rho_at(env_q, t);
    row.beta_q = d.beta_q;
    row.z_q = d.z_q;
    row.s_q = d.s_q;
    row.delta_v = truth.delta_v;
    row.delta_v_hat = d.delta_hat_v;
    // What the position law sees: the true coupling plus the part of the
    // commanded force vector the airframe does not realize this tick.
    row.delta_v_effective =
        truth.delta_v + (d.thrust_vector - cmd.thrust * (state.R * Vec3::UnitZ())) / m;
    row.delta_omega = truth.delta_omega;
    row.delta_omega_hat = d.delta_hat_omega;
    row.thrust = cmd.thrust;
    row.torque = cmd.torque;
    if (t >= config.convergence_time) {
      rec.delta_f_v =
          std::max(rec.delta_f_v, (row.delta_v_effective - row.delta_v_hat).norm());
      rec.delta_f_omega =
          std::max(rec.delta_f_omega, (row.delta_omega - row.delta_omega_hat).norm());
    }
    rec.rows.push_back(row);

    if (k < ticks) state = rk4_step(state, cmd, coupling, t, dt, quad);
  }
  if (ppc) rec.c_audit = ppc->c_audit();
  return rec;
}

CBoundAudit audit_scenario(const SimConfig& config, const std::string& scenario_name) {
  config.validate();
  const ScenarioConfig& sc = config.scenario(scenario_name);
  ControllerConfig cc = config.controller;
  cc.enforce_c_bound = false;
  PrescribedPerformanceController ctl(cc, config.quad, config.dt, true, true);
  RigidBodyState state;
  state.p = sc.reference.start;
  ctl.step(0.0, state, reference_at(sc.reference, 0.0));
  return *ctl.c_audit();
}

// ---- CSV ---------------------------------------------------------------------

namespace {

void push3(std::vector<std::string>& h, const char* base) {
  for (const char* axis : {"x", "y", "z"}) h.push_back(std::string(base) + "_" + axis);
}

std::vector<double> flatten(const TickRow& r) {
  std::vector<double> out;
  out.reserve(80);
  auto put = [&](const Vec3& v) { out.insert(out.end(), v.data(), v.data() + 3); };
  out.push_back(r.t);
  put(r.p);
  put(r.v);
  out.insert(out.end(), r.quat.data(), r.quat.data() + 4);
  put(r.omega);
  put(r.p_d);
  put(r.position_error);
  put(r.rho_p);
  put(r.beta_p);
  put(r.z_p);
  put(r.s_p);
  put(r.qv);
  put(r.rho_q);
  put(r.beta_q);
  put(r.z_q);
  put(r.s_q);
  put(r.delta_v);
  put(r.delta_v_hat);
  put(r.delta_v_effective);
  put(r.delta_omega);
  put(r.delta_omega_hat);
  out.push_back(r.thrust);
  put(r.torque);
  return out;
}

TickRow unflatten(const std::vector<double>& f) {
  TickRow r;
  std::size_t i = 0;
  auto get = [&](Vec3& v) {
    v = Vec3(f[i], f[i + 1], f[i + 2]);
    i += 3;
  };
  r.t = f[i++];
  get(r.p);
  get(r.v);
  r.quat = Eigen::Vector4d(f[i], f[i + 1], f[i + 2], f[i + 3]);
  i += 4;
  get(r.omega);
  get(r.p_d);
  get(r.position_error);
  get(r.rho_p);
  get(r.beta_p);
  get(r.z_p);
  get(r.s_p);
  get(r.qv);
  get(r.rho_q);
  get(r.beta_q);
  get(r.z_q);
  get(r.s_q);
  get(r.delta_v);
  get(r.delta_v_hat);
  get(r.delta_v_effective);
  get(r.delta_omega);
  get(r.delta_omega_hat);
  r.thrust = f[i++];
  get(r.torque);
  return r;
}

}  // namespace

std::vector<std::string> csv_header() {
  std::vector<std::string> h{"t"};
  push3(h, "p");
  push3(h, "v");
  for (const char* c : {"q_w", "q_x", "q_y", "q_z"}) h.emplace_back(c);
  push3(h, "omega");
  push3(h, "p_d");
  push3(h, "err");
  push3(h, "rho_p");
  push3(h, "beta_p");
  push3(h, "z_p");
  push3(h, "s_p");
  push3(h, "qv");
  push3(h, "rho_q");
  push3(h, "beta_q");
  push3(h, "z_q");
  push3(h, "s_q");
  push3(h, "delta_v");
  push3(h, "delta_v_hat");
  push3(h, "delta_v_eff");
  push3(h, "delta_omega");
  push3(h, "delta_omega_hat");
  h.emplace_back("thrust");
  push3(h, "torque");
  return h;
}

void write_csv(const TrialRecord& rec, std::ostream& out) {
  out << "# ppcsim_csv=" << kCsvSchemaVersion << " scenario=" << rec.scenario
      << " variant=" << variant_name(rec.variant) << " seed=" << rec.seed
      << " config_hash=" << hash_hex(rec.config_hash) << " dt=" << format_double(rec.dt)
      << " convergence_time=" << format_double(rec.convergence_time)
      << " rho_p_inf=" << format_double(rec.rho_p_inf[0]) << ','
      << format_double(rec.rho_p_inf[1]) << ',' << format_double(rec.rho_p_inf[2]) << "\n";
  const std::vector<std::string> header = csv_header();
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << "\n";
  std::string line;
  for (const TickRow& row : rec.rows) {
    line.clear();
    const std::vector<double> values = flatten(row);
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) line += ',';
      line += format_double(values[i]);
    }
    line += '\n';
    out << line;
  }
}

TrialRecord read_csv(std::istream& in) {
  TrialRecord rec;
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ppcsim_csv=", 0) != 0) {
    throw Error(ErrorCode::kIo, "not a ppcsim trial CSV (missing metadata line)");
  }
  std::istringstream meta(line.substr(2));
  std::string token;
  try {
    while (meta >> token) {
      const auto eq = token.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = token.substr(0, eq);
      const std::string value = token.substr(eq + 1);
      if (key == "ppcsim_csv" && value != std::to_string(kCsvSchemaVersion)) {
        throw Error(ErrorCode::kIo, "unsupported CSV schema " + value);
      } else if (key == "scenario") {
        rec.scenario = value;
      } else if (key == "variant") {
        const auto v = parse_variant(value);
        if (!v) throw Error(ErrorCode::kIo, "unknown variant " + value);
        rec.variant = *v;
      } else if (key == "seed") {
        rec.seed = std::stoull(value);
      } else if (key == "config_hash") {
        rec.config_hash = std::stoull(value, nullptr, 16);
      } else if (key == "dt") {
        rec.dt = std::stod(value);
      } else if (key == "convergence_time") {
        rec.convergence_time = std::stod(value);
      } else if (key == "rho_p_inf") {
        std::istringstream parts(value);
        std::string part;
        for (int i = 0; i < 3 && std::getline(parts, part, ','); ++i) {
          rec.rho_p_inf[i] = std::stod(part);
        }
      }
    }
  } catch (const std::logic_error&) {
    // stod/stoull report bad numbers as invalid_argument or out_of_range.
    throw Error(ErrorCode::kIo, "malformed CSV metadata value near '" + token + "'");
  }
  const std::vector<std::string> header = csv_header();
  std::string expected;
  for (std::size_t i = 0; i < header.size(); ++i) expected += (i ? "," : "") + header[i];
  if (!std::getline(in, line) || line != expected) {
    throw Error(ErrorCode::kIo, "CSV header does not match schema");
  }
  std::vector<double> values(header.size());
  long lineno = 2;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    for (std::size_t i = 0; i < values.size(); ++i) {
      const auto res = std::from_chars(p, end, values[i]);
      const bool last = i + 1 == values.size();
      if (res.ec != std::errc() || (last ? res.ptr != end : *res.ptr != ',')) {
        throw Error(ErrorCode::kIo, "malformed CSV row at line " + std::to_string(lineno));
      }
      p = res.ptr + 1;
    }
    rec.rows.push_back(unflatten(values));
  }
  return rec;
}

}  // namespace ppcsim
