// SPDX-License-Identifier: Apache-2.0
//
// wobblesim - coherence analysis of the air-to-ground channel under UAV pitch wobble
// Copyright (C) 2026 the wobblesim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "wobblesim/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "wobblesim/acf_analytic.hpp"
#include "wobblesim/acf_montecarlo.hpp"
#include "wobblesim/coherence.hpp"
#include "wobblesim/curve_io.hpp"

namespace wobblesim {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

// ---------------------------------------------------------------- config ---

std::size_t line_of_byte(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

std::size_t line_of_key(const std::string& text, const std::string& key) {
  const std::string needle = "\"" + key + "\"";
  const std::size_t pos = text.find(needle);
  return pos == std::string::npos ? 0 : line_of_byte(text, pos);
}

const std::map<std::string, std::set<std::string>> kSchema = {
    {"", {"job", "channel", "process", "coherence", "ensemble", "output_dir", "quick"}},
    {"channel",
     {"carrier_hz", "wavelength_m", "antenna_offset_m", "uav_height_m", "rician_k",
      "laplace_scale_rad", "los_aod_deg", "num_mpc", "angle_law"}},
    {"channel.angle_law", {"kind", "low_deg", "high_deg", "value_deg"}},
    {"process", {"kind", "rate_b", "theta_m_deg", "freq_law"}},
    {"process.freq_law", {"kind", "low_hz", "high_hz", "value_hz"}},
    {"coherence", {"gamma", "tau_max_s", "tau_points", "tau_min_s", "t_grid_s"}},
    {"ensemble",
     {"num_realizations", "master_seed", "uav_count", "mus_los_aods_deg", "shared_scatterers",
      "exact_geometry"}},
};

void check_keys(const json& node, const std::string& scope, const std::string& text,
                const std::string& source) {
  const auto it = kSchema.find(scope);
  if (it == kSchema.end() || !node.is_object()) return;
  for (const auto& [key, value] : node.items()) {
    if (!it->second.count(key)) {
      const std::size_t line = line_of_key(text, key);
      throw config_error(source + ":" + std::to_string(line) + ": unknown key '" +
                         (scope.empty() ? key : scope + "." + key) + "'");
    }
    const std::string child_scope = scope.empty() ? key : scope + "." + key;
    if (kSchema.count(child_scope)) check_keys(value, child_scope, text, source);
  }
}

template <class T>
T read_field(const json& node, const std::string& scope, const std::string& key, T fallback,
             const std::string& text, const std::string& source) {
  if (!node.contains(key)) return fallback;
  try {
    return node.at(key).get<T>();
  } catch (const json::exception&) {
    throw config_error(source + ":" + std::to_string(line_of_key(text, key)) + ": key '" +
                       scope + "." + key + "' has the wrong type");
  }
}

} // namespace

ExperimentConfig parse_config(const std::string& text, const std::string& source) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw config_error(source + ":" + std::to_string(line_of_byte(text, e.byte)) +
                       ": JSON parse error: " + e.what());
  }
  if (!root.is_object()) throw config_error(source + ":1: config root must be a JSON object");
  check_keys(root, "", text, source);

  ExperimentConfig cfg;
  cfg.job = read_field<std::string>(root, "", "job", cfg.job, text, source);
  cfg.output_dir = read_field<std::string>(root, "", "output_dir", cfg.output_dir, text, source);
  cfg.quick = read_field<bool>(root, "", "quick", cfg.quick, text, source);

  if (root.contains("channel")) {
    const json& ch = root.at("channel");
    if (ch.contains("carrier_hz") && ch.contains("wavelength_m"))
      throw config_error(source + ":" + std::to_string(line_of_key(text, "wavelength_m")) +
                         ": give either channel.carrier_hz or channel.wavelength_m, not both");
    cfg.carrier_hz = read_field<double>(ch, "channel", "carrier_hz", cfg.carrier_hz, text, source);
    if (ch.contains("wavelength_m")) {
      const double lam = read_field<double>(ch, "channel", "wavelength_m", 0.0, text, source);
      if (!(lam > 0.0))
        throw config_error(source + ":" + std::to_string(line_of_key(text, "wavelength_m")) +
                           ": channel.wavelength_m must be > 0");
      cfg.carrier_hz = kSpeedOfLightMps / lam;
    }
    cfg.antenna_offset_m =
        read_field<double>(ch, "channel", "antenna_offset_m", cfg.antenna_offset_m, text, source);
    cfg.uav_height_m =
        read_field<double>(ch, "channel", "uav_height_m", cfg.uav_height_m, text, source);
    cfg.rician_k = read_field<double>(ch, "channel", "rician_k", cfg.rician_k, text, source);
    cfg.laplace_scale_rad = read_field<double>(ch, "channel", "laplace_scale_rad",
                                               cfg.laplace_scale_rad, text, source);
    cfg.los_aod_deg =
        read_field<double>(ch, "channel", "los_aod_deg", cfg.los_aod_deg, text, source);
    cfg.num_mpc = read_field<int>(ch, "channel", "num_mpc", cfg.num_mpc, text, source);
    if (ch.contains("angle_law")) {
      const json& law = ch.at("angle_law");
      cfg.angle_law_kind = read_field<std::string>(law, "channel.angle_law", "kind",
                                                   cfg.angle_law_kind, text, source);
      cfg.angle_low_deg = read_field<double>(law, "channel.angle_law", "low_deg",
                                             cfg.angle_low_deg, text, source);
      cfg.angle_high_deg = read_field<double>(law, "channel.angle_law", "high_deg",
                                              cfg.angle_high_deg, text, source);
      cfg.angle_value_deg = read_field<double>(law, "channel.angle_law", "value_deg",
                                               cfg.angle_value_deg, text, source);
    }
  }

  if (root.contains("process")) {
    const json& pr = root.at("process");
    cfg.process_kind =
        read_field<std::string>(pr, "process", "kind", cfg.process_kind, text, source);
    cfg.wiener_rate_b = read_field<double>(pr, "process", "rate_b", cfg.wiener_rate_b, text,
                                           source);
    cfg.theta_m_deg =
        read_field<double>(pr, "process", "theta_m_deg", cfg.theta_m_deg, text, source);
    if (pr.contains("freq_law")) {
      const json& law = pr.at("freq_law");
      cfg.freq_law_kind = read_field<std::string>(law, "process.freq_law", "kind",
                                                  cfg.freq_law_kind, text, source);
      cfg.freq_low_hz =
          read_field<double>(law, "process.freq_law", "low_hz", cfg.freq_low_hz, text, source);
      cfg.freq_high_hz =
          read_field<double>(law, "process.freq_law", "high_hz", cfg.freq_high_hz, text, source);
      cfg.freq_value_hz = read_field<double>(law, "process.freq_law", "value_hz",
                                             cfg.freq_value_hz, text, source);
    }
  }

  if (root.contains("coherence")) {
    const json& co = root.at("coherence");
    cfg.gamma = read_field<double>(co, "coherence", "gamma", cfg.gamma, text, source);
    cfg.tau_max_s = read_field<double>(co, "coherence", "tau_max_s", cfg.tau_max_s, text, source);
    cfg.tau_points =
        read_field<std::size_t>(co, "coherence", "tau_points", cfg.tau_points, text, source);
    cfg.tau_min_s = read_field<double>(co, "coherence", "tau_min_s", cfg.tau_min_s, text, source);
    cfg.t_grid_s = read_field<std::vector<double>>(co, "coherence", "t_grid_s", cfg.t_grid_s,
                                                   text, source);
  }

  if (root.contains("ensemble")) {
    const json& en = root.at("ensemble");
    cfg.num_realizations = read_field<std::size_t>(en, "ensemble", "num_realizations",
                                                   cfg.num_realizations, text, source);
    cfg.master_seed =
        read_field<std::uint64_t>(en, "ensemble", "master_seed", cfg.master_seed, text, source);
    cfg.uav_count =
        read_field<std::size_t>(en, "ensemble", "uav_count", cfg.uav_count, text, source);
    cfg.mus_los_aods_deg = read_field<std::vector<double>>(en, "ensemble", "mus_los_aods_deg",
                                                           cfg.mus_los_aods_deg, text, source);
    cfg.shared_scatterers = read_field<bool>(en, "ensemble", "shared_scatterers",
                                             cfg.shared_scatterers, text, source);
    cfg.exact_geometry =
        read_field<bool>(en, "ensemble", "exact_geometry", cfg.exact_geometry, text, source);
  }

  static const std::set<std::string> kJobs = {"acf",     "coherence",   "figure2", "figure3",
                                              "figure4", "mc-validate", "mus"};
  if (!kJobs.count(cfg.job))
    throw config_error(source + ":" + std::to_string(line_of_key(text, "job")) +
                       ": unknown job '" + cfg.job + "'");
  if (cfg.process_kind != "wiener" && cfg.process_kind != "sinusoid" &&
      cfg.process_kind != "none")
    throw config_error(source + ":" + std::to_string(line_of_key(text, "kind")) +
                       ": process.kind must be 'wiener', 'sinusoid' or 'none'");
  if (cfg.angle_law_kind != "uniform" && cfg.angle_law_kind != "point_mass")
    throw config_error(source + ":" + std::to_string(line_of_key(text, "kind")) +
                       ": channel.angle_law.kind must be 'uniform' or 'point_mass'");
  if (cfg.freq_law_kind != "uniform" && cfg.freq_law_kind != "point_mass")
    throw config_error(source + ":" + std::to_string(line_of_key(text, "kind")) +
                       ": process.freq_law.kind must be 'uniform' or 'point_mass'");
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error(path + ": cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

int ExperimentConfig::resolved_num_mpc() const {
  if (num_mpc >= 0) return num_mpc;
  return carrier_hz <= 6.0e9 ? 20 : 10; // 20 in sub-6 GHz, 10 in mmWave
}

ChannelSpec ExperimentConfig::channel_spec() const {
  ChannelSpec spec;
  spec.carrier_hz = carrier_hz;
  spec.antenna_offset_m = antenna_offset_m;
  spec.uav_height_m = uav_height_m;
  spec.rician_k = rician_k;
  spec.laplace_scale_rad = laplace_scale_rad;
  spec.los_aod_rad = deg_to_rad(los_aod_deg);
  spec.num_mpc = resolved_num_mpc();
  try {
    if (angle_law_kind == "uniform")
      spec.angle_law = AngleLaw::uniform(deg_to_rad(angle_low_deg), deg_to_rad(angle_high_deg));
    else if (angle_law_kind == "point_mass")
      spec.angle_law = AngleLaw::point_mass(deg_to_rad(angle_value_deg));
    else
      throw config_error("channel.angle_law.kind must be 'uniform' or 'point_mass'");
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw config_error(std::string("invalid channel settings: ") + e.what());
  }
  return spec;
}

PitchProcessSpec ExperimentConfig::pitch_process() const {
  try {
    if (process_kind == "wiener") return PitchProcessSpec::wiener(wiener_rate_b);
    if (process_kind == "sinusoid") {
      FreqLaw law = freq_law_kind == "point_mass"
                        ? FreqLaw::point_mass(freq_value_hz)
                        : FreqLaw::uniform(freq_low_hz, freq_high_hz);
      if (freq_law_kind != "uniform" && freq_law_kind != "point_mass")
        throw config_error("process.freq_law.kind must be 'uniform' or 'point_mass'");
      return PitchProcessSpec::sinusoid(deg_to_rad(theta_m_deg), law);
    }
    if (process_kind == "none") return PitchProcessSpec::no_wobble();
  } catch (const std::invalid_argument& e) {
    throw config_error(std::string("invalid process settings: ") + e.what());
  }
  throw config_error("process.kind must be 'wiener', 'sinusoid' or 'none'");
}

std::size_t ExperimentConfig::resolved_realizations() const {
  return quick ? std::min<std::size_t>(num_realizations, 10000) : num_realizations;
}

std::vector<double> ExperimentConfig::resolved_t_grid() const {
  if (!t_grid_s.empty()) return t_grid_s;
  if (process_kind != "sinusoid") return {0.0};
  // Anchor grid across one period of the slowest pitch frequency.
  const PitchProcessSpec proc = pitch_process();
  const double span = 1.0 / proc.freq_law.min_hz();
  std::vector<double> grid(64);
  for (std::size_t i = 0; i < grid.size(); ++i)
    grid[i] = span * static_cast<double>(i) / static_cast<double>(grid.size() - 1);
  return grid;
}

std::vector<double> ExperimentConfig::resolved_mus_aods_deg() const {
  if (!mus_los_aods_deg.empty()) {
    if (mus_los_aods_deg.size() != uav_count)
      throw config_error("ensemble.mus_los_aods_deg must list one AoD per UAV");
    return mus_los_aods_deg;
  }
  std::vector<double> aods;
  for (std::size_t i = 0; i < uav_count; ++i)
    aods.push_back(20.0 + 20.0 * static_cast<double>(i % 4));
  return aods;
}

std::string resolved_config_json(const ExperimentConfig& cfg) {
  json root;
  root["job"] = cfg.job;
  json ch;
  ch["carrier_hz"] = cfg.carrier_hz;
  ch["antenna_offset_m"] = cfg.antenna_offset_m;
  ch["uav_height_m"] = cfg.uav_height_m;
  ch["rician_k"] = cfg.rician_k;
  ch["laplace_scale_rad"] = cfg.laplace_scale_rad;
  ch["los_aod_deg"] = cfg.los_aod_deg;
  ch["num_mpc"] = cfg.resolved_num_mpc();
  json law;
  law["kind"] = cfg.angle_law_kind;
  if (cfg.angle_law_kind == "uniform") {
    law["low_deg"] = cfg.angle_low_deg;
    law["high_deg"] = cfg.angle_high_deg;
  } else {
    law["value_deg"] = cfg.angle_value_deg;
  }
  ch["angle_law"] = law;
  root["channel"] = ch;

  json pr;
  pr["kind"] = cfg.process_kind;
  if (cfg.process_kind == "wiener") pr["rate_b"] = cfg.wiener_rate_b;
  if (cfg.process_kind == "sinusoid") {
    pr["theta_m_deg"] = cfg.theta_m_deg;
    json fl;
    fl["kind"] = cfg.freq_law_kind;
    if (cfg.freq_law_kind == "uniform") {
      fl["low_hz"] = cfg.freq_low_hz;
      fl["high_hz"] = cfg.freq_high_hz;
    } else {
      fl["value_hz"] = cfg.freq_value_hz;
    }
    pr["freq_law"] = fl;
  }
  root["process"] = pr;

  json co;
  co["gamma"] = cfg.gamma;
  co["tau_max_s"] = cfg.tau_max_s;
  co["tau_points"] = cfg.tau_points;
  co["tau_min_s"] = cfg.tau_min_s;
  co["t_grid_s"] = cfg.resolved_t_grid();
  root["coherence"] = co;

  json en;
  en["num_realizations"] = cfg.resolved_realizations();
  en["master_seed"] = cfg.master_seed;
  en["uav_count"] = cfg.uav_count;
  en["mus_los_aods_deg"] = cfg.resolved_mus_aods_deg();
  en["shared_scatterers"] = cfg.shared_scatterers;
  en["exact_geometry"] = cfg.exact_geometry;
  root["ensemble"] = en;

  root["output_dir"] = cfg.output_dir;
  root["quick"] = cfg.quick;
  return root.dump();
}

namespace {

// ------------------------------------------------------------------ jobs ---

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
}

void write_summary(const fs::path& dir, const std::string& name, json summary,
                   const ExperimentConfig& cfg) {
  summary["config"] = json::parse(resolved_config_json(cfg));
  const fs::path path = dir / name;
  write_text(path, summary.dump(2) + "\n");
  std::cout << "wrote " << path.string() << "\n";
}

json coherence_json(const CoherenceResult& r) {
  json out;
  out["gamma"] = r.threshold_gamma;
  out["anchor_t_s"] = r.anchor_t_s;
  if (r.kind == CoherenceKind::Finite) {
    out["kind"] = "finite";
    out["t_c_s"] = r.t_c_s;
  } else {
    out["kind"] = "unbounded";
    out["limiting_acf"] = r.limiting_acf;
  }
  return out;
}

std::string carrier_label(double carrier_hz) {
  std::ostringstream label;
  label << carrier_hz / 1e9 << "ghz";
  return label.str();
}

void emit_curve(const fs::path& dir, const std::string& name, const AcfCurve& curve,
                const ExperimentConfig& cfg) {
  write_acf_curve(dir / name, curve, resolved_config_json(cfg));
  std::cout << "wrote " << (dir / name).string() << ".csv\n";
}

std::vector<double> job_tau_grid(const ExperimentConfig& cfg) {
  return default_tau_grid(cfg.tau_max_s, cfg.tau_points, cfg.tau_min_s);
}

// Validation lag range matched to where the process actually decays.
std::vector<double> validation_tau_grid(const ExperimentConfig& cfg, const ChannelSpec& spec,
                                        const PitchProcessSpec& proc, std::size_t points) {
  double tau_hi = 0.01;
  if (proc.kind == PitchProcessSpec::Kind::Wiener) {
    const double lam = spec.wavelength_m();
    const double c0 = std::cos(spec.los_aod_rad);
    const double rate = 2.0 * kPi * kPi / (lam * lam) * spec.antenna_offset_m *
                        spec.antenna_offset_m * c0 * c0 * proc.wiener_rate_b;
    tau_hi = 8.0 / rate;
  } else if (proc.kind == PitchProcessSpec::Kind::Sinusoid) {
    tau_hi = 0.02;
  }
  tau_hi = std::min(tau_hi, cfg.tau_max_s);
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i)
    grid[i] = tau_hi * static_cast<double>(i) / static_cast<double>(points - 1);
  return grid;
}

int run_acf_job(const ExperimentConfig& cfg, const fs::path& dir) {
  const ChannelSpec spec = cfg.channel_spec();
  const PitchProcessSpec proc = cfg.pitch_process();
  const std::vector<double> taus = job_tau_grid(cfg);
  const double anchor = cfg.resolved_t_grid().front();
  const AcfCurve curve = analytic_acf_curve(spec, proc, anchor, taus);
  emit_curve(dir, "acf_" + cfg.process_kind, curve, cfg);
  json summary;
  summary["job"] = "acf";
  summary["curve"] = "acf_" + cfg.process_kind;
  summary["total_power"] = curve.normalizer;
  write_summary(dir, "acf_summary.json", summary, cfg);
  return kExitOk;
}

int run_coherence_job(const ExperimentConfig& cfg, const fs::path& dir) {
  const ChannelSpec spec = cfg.channel_spec();
  const PitchProcessSpec proc = cfg.pitch_process();
  const std::vector<double> taus = job_tau_grid(cfg);
  json summary;
  summary["job"] = "coherence";

  try {
    if (proc.kind == PitchProcessSpec::Kind::Sinusoid) {
      const std::vector<double> t_grid = cfg.resolved_t_grid();
      auto acf_fn = [&](double t, double tau) { return acf_sinusoid(spec, proc, t, tau); };
      auto limit_fn = [&](double t) { return acf_sinusoid_limit(spec, proc, t); };
      const NonstationaryCoherence result =
          coherence_time_nonstationary(acf_fn, cfg.gamma, t_grid, taus, limit_fn);
      summary["coherence"] = coherence_json(result.overall);
      json table = json::array();
      for (const auto& entry : result.table) {
        json row;
        row["t_s"] = entry.t_s;
        row["outcome"] = entry.outcome == TcOutcome::Finite
                             ? "finite"
                             : entry.outcome == TcOutcome::Unbounded ? "unbounded"
                                                                     : "inconclusive";
        row["value"] = entry.value;
        table.push_back(row);
      }
      summary["per_anchor"] = table;
    } else {
      const AcfCurve curve = analytic_acf_curve(spec, proc, 0.0, taus);
      emit_curve(dir, "coherence_acf", curve, cfg);
      summary["coherence"] = coherence_json(coherence_time(curve, cfg.gamma));
    }
  } catch (const inconclusive_error& e) {
    summary["coherence"] = {{"kind", "inconclusive"}, {"detail", e.what()}};
    write_summary(dir, "coherence_summary.json", summary, cfg);
    std::cerr << "inconclusive: " << e.what() << "\n";
    return kExitInconclusive;
  }
  write_summary(dir, "coherence_summary.json", summary, cfg);
  return kExitOk;
}

int run_figure2(const ExperimentConfig& cfg, const fs::path& dir) {
  ExperimentConfig local = cfg;
  local.carrier_hz = 6.0e9;
  local.theta_m_deg = 5.0;
  const ChannelSpec spec = local.channel_spec();
  const std::vector<double> taus = job_tau_grid(local);

  local.process_kind = "wiener";
  const AcfCurve wiener = wiener_acf_curve(spec, local.wiener_rate_b, taus);
  emit_curve(dir, "figure2_wiener", wiener, local);
  const CoherenceResult wiener_tc = coherence_time(wiener, local.gamma);

  local.process_kind = "sinusoid";
  const PitchProcessSpec sinusoid = local.pitch_process();
  const std::vector<double> t_grid =
      cfg.t_grid_s.empty() ? std::vector<double>{0.0, 0.01, 0.025, 0.05} : cfg.t_grid_s;
  json curves = json::array();
  for (double t : t_grid) {
    const AcfCurve curve = sinusoid_acf_curve(spec, sinusoid, t, taus);
    std::ostringstream name;
    name << "figure2_sinusoid_t" << t;
    emit_curve(dir, name.str(), curve, local);
    curves.push_back(name.str());
  }
  const AcfCurve t0_curve = sinusoid_acf_curve(spec, sinusoid, 0.0, taus);
  const CoherenceResult sin_tc = coherence_time(t0_curve, local.gamma);

  json summary;
  summary["job"] = "figure2";
  summary["carrier_hz"] = 6.0e9;
  summary["theta_m_deg"] = 5.0;
  summary["wiener_coherence"] = coherence_json(wiener_tc);
  summary["sinusoid_t0_coherence"] = coherence_json(sin_tc);
  summary["sinusoid_curves"] = curves;
  write_summary(dir, "figure2_summary.json", summary, cfg);
  return kExitOk;
}

int run_carrier_or_pitch_sweep(const ExperimentConfig& cfg, const fs::path& dir,
                               const std::string& job) {
  const bool carrier_sweep = job == "figure3";
  const std::vector<double> carriers =
      carrier_sweep ? std::vector<double>{2.4e9, 6.0e9, 30.0e9} : std::vector<double>{2.4e9};
  const std::vector<double> pitches =
      carrier_sweep ? std::vector<double>{5.0} : std::vector<double>{5.0, 7.0, 10.0};

  json sweep = json::array();
  for (double fc : carriers) {
    for (double theta_m : pitches) {
      ExperimentConfig local = cfg;
      local.carrier_hz = fc;
      local.theta_m_deg = theta_m;
      local.process_kind = "sinusoid";
      const ChannelSpec spec = local.channel_spec();
      const PitchProcessSpec proc = local.pitch_process();
      const std::vector<double> taus = job_tau_grid(local);
      const AcfCurve curve = sinusoid_acf_curve(spec, proc, 0.0, taus);
      std::ostringstream name;
      name << job << "_fc" << carrier_label(fc);
      if (!carrier_sweep) name << "_theta" << theta_m << "deg";
      emit_curve(dir, name.str(), curve, local);

      json entry;
      entry["carrier_hz"] = fc;
      entry["theta_m_deg"] = theta_m;
      entry["num_mpc"] = local.resolved_num_mpc();
      entry["curve"] = name.str();
      entry["coherence"] = coherence_json(coherence_time(curve, local.gamma));
      sweep.push_back(entry);
    }
  }
  json summary;
  summary["job"] = job;
  summary["gamma"] = cfg.gamma;
  summary["sweep"] = sweep;
  write_summary(dir, job + "_summary.json", summary, cfg);
  return kExitOk;
}

int run_mc_validate(const ExperimentConfig& cfg, const fs::path& dir) {
  const ChannelSpec spec = cfg.channel_spec();
  const PitchProcessSpec proc = cfg.pitch_process();
  const std::size_t points = std::min<std::size_t>(cfg.tau_points, 128);
  const std::vector<double> taus = validation_tau_grid(cfg, spec, proc, points);
  const double anchor = cfg.resolved_t_grid().front();

  const AcfCurve analytic = analytic_acf_curve(spec, proc, anchor, taus);
  const EnsembleConfig ensemble =
      EnsembleConfig::for_acf(cfg.resolved_realizations(), cfg.master_seed, anchor, taus);
  const GeometryMode mode =
      cfg.exact_geometry ? GeometryMode::Exact : GeometryMode::Approximate;
  const AcfCurve mc = estimate_acf(ensemble, spec, proc, anchor, taus, mode);

  std::size_t within = 0;
  double worst_im = 0.0;
  std::string csv = "tau_s,analytic,mc_real,mc_imag,stderr,z_re,z_im\n";
  for (std::size_t i = 0; i < taus.size(); ++i) {
    const double se = mc.stderrs[i];
    const double diff_re = mc.values[i].real() - analytic.values[i].real();
    const double z_re = se > 0.0 ? diff_re / se : (diff_re == 0.0 ? 0.0 : 1e99);
    const double z_im =
        se > 0.0 ? mc.values[i].imag() / se : (mc.values[i].imag() == 0.0 ? 0.0 : 1e99);
    if (std::abs(z_re) <= 3.0) ++within;
    worst_im = std::max(worst_im, std::abs(z_im));
    csv += format_double(taus[i]) + "," + format_double(analytic.values[i].real()) + "," +
           format_double(mc.values[i].real()) + "," + format_double(mc.values[i].imag()) + "," +
           format_double(se) + "," + format_double(z_re) + "," + format_double(z_im) + "\n";
  }
  write_text(dir / "mc_validate.csv", csv);
  std::cout << "wrote " << (dir / "mc_validate.csv").string() << "\n";
  emit_curve(dir, "mc_validate_analytic", analytic, cfg);
  emit_curve(dir, "mc_validate_montecarlo", mc, cfg);

  const double frac = static_cast<double>(within) / static_cast<double>(taus.size());
  const bool pass = frac >= 0.99 && worst_im <= 3.0;
  json summary;
  summary["job"] = "mc-validate";
  summary["realizations"] = cfg.resolved_realizations();
  summary["fraction_within_3se"] = frac;
  summary["max_imag_z"] = worst_im;
  summary["pass"] = pass;
  write_summary(dir, "mc_validate_summary.json", summary, cfg);
  std::cout << (pass ? "PASS" : "FAIL") << ": " << 100.0 * frac
            << "% of lags within 3 SE, max |imag z| = " << worst_im << "\n";
  return pass ? kExitOk : kExitFailure;
}

int run_mus(const ExperimentConfig& cfg, const fs::path& dir) {
  const std::vector<double> aods_deg = cfg.resolved_mus_aods_deg();
  std::vector<ChannelSpec> specs;
  for (double aod : aods_deg) {
    ExperimentConfig local = cfg;
    local.los_aod_deg = aod;
    specs.push_back(local.channel_spec());
  }
  const PitchProcessSpec proc = cfg.pitch_process();
  const std::vector<double> taus = validation_tau_grid(cfg, specs[0], proc, 32);
  const double anchor = cfg.resolved_t_grid().front();

  const EnsembleConfig ensemble = EnsembleConfig::for_acf(
      cfg.resolved_realizations(), cfg.master_seed, anchor, taus, specs.size());
  const std::vector<AutocorrMatrix> mc =
      estimate_acf_matrix(ensemble, specs, proc, anchor, taus, cfg.shared_scatterers);

  bool off_diag_ok = true;
  bool diag_ok = true;
  double worst_off_z = 0.0;
  double worst_diag_z = 0.0;
  std::string csv = "tau_s,row,col,analytic_re,mc_re,mc_im,stderr,z\n";
  for (std::size_t lag = 0; lag < taus.size(); ++lag) {
    const AutocorrMatrix analytic = mus_acf_matrix(specs, proc, anchor, taus[lag]);
    for (std::size_t i = 0; i < specs.size(); ++i) {
      for (std::size_t k = 0; k < specs.size(); ++k) {
        const std::complex<double> entry = mc[lag].at(i, k);
        const double se = mc[lag].stderr_at(i, k);
        const double ref = analytic.at(i, k).real();
        const double z = se > 0.0 ? std::abs(entry - analytic.at(i, k)) / se : 0.0;
        if (i == k) {
          worst_diag_z = std::max(worst_diag_z, z);
          if (z > 3.0) diag_ok = false;
        } else {
          worst_off_z = std::max(worst_off_z, z);
          if (z > 3.0) off_diag_ok = false;
        }
        csv += format_double(taus[lag]) + "," + std::to_string(i) + "," + std::to_string(k) +
               "," + format_double(ref) + "," + format_double(entry.real()) + "," +
               format_double(entry.imag()) + "," + format_double(se) + "," + format_double(z) +
               "\n";
      }
    }
  }
  write_text(dir / "mus_matrix.csv", csv);
  std::cout << "wrote " << (dir / "mus_matrix.csv").string() << "\n";

  const bool pass = off_diag_ok && diag_ok;
  json summary;
  summary["job"] = "mus";
  summary["uav_count"] = specs.size();
  summary["shared_scatterers"] = cfg.shared_scatterers;
  summary["worst_offdiag_z"] = worst_off_z;
  summary["worst_diag_z"] = worst_diag_z;
  summary["pass"] = pass;
  write_summary(dir, "mus_summary.json", summary, cfg);
  std::cout << (pass ? "PASS" : "FAIL") << ": worst off-diagonal z = " << worst_off_z
            << ", worst diagonal z = " << worst_diag_z << "\n";
  return pass ? kExitOk : kExitFailure;
}

} // namespace

int run_job(const ExperimentConfig& cfg) {
  const ChannelSpec spec = cfg.channel_spec(); // validate early
  (void)spec;
  const PitchProcessSpec proc = cfg.pitch_process();
  if (proc.exceeds_small_angle)
    std::cerr << "warning: max pitch angle " << cfg.theta_m_deg
              << " deg exceeds the 10 deg small-angle modelling regime\n";

  const fs::path dir(cfg.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw config_error("cannot create output directory " + dir.string());

  if (cfg.job == "acf") return run_acf_job(cfg, dir);
  if (cfg.job == "coherence") return run_coherence_job(cfg, dir);
  if (cfg.job == "figure2") return run_figure2(cfg, dir);
  if (cfg.job == "figure3" || cfg.job == "figure4")
    return run_carrier_or_pitch_sweep(cfg, dir, cfg.job);
  if (cfg.job == "mc-validate") return run_mc_validate(cfg, dir);
  if (cfg.job == "mus") return run_mus(cfg, dir);
  throw config_error("unknown job '" + cfg.job + "'");
}

} // namespace wobblesim
