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
//
// Experiment runner behind the wobblesim CLI: JSON config parsing with strict
// key checking, the acf / coherence / figure / mc-validate / mus jobs, CSV
// curve emission and JSON result summaries. Figure jobs reproduce the
// reference scenario sweeps (carrier 2.4/6/30 GHz, max pitch 5/7/10 deg) and
// report the gamma = 0.5 coherence times.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "wobblesim/spectrum.hpp"
#include "wobblesim/wobble.hpp"

namespace wobblesim {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;      // job ran, validation failed
inline constexpr int kExitConfigError = 2;  // config unparseable or invalid
inline constexpr int kExitInconclusive = 3; // coherence window exhausted

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string job = "acf";

  // channel
  double carrier_hz = 6.0e9;
  double antenna_offset_m = 0.4;
  double uav_height_m = 100.0;
  double rician_k = 11.5;
  double laplace_scale_rad = 1.0;
  double los_aod_deg = 20.0;
  int num_mpc = -1; // -1: auto (20 up to 6 GHz inclusive, 10 above)
  std::string angle_law_kind = "uniform";
  double angle_low_deg = 0.0;
  double angle_high_deg = 85.0;
  double angle_value_deg = 0.0;

  // pitch process
  std::string process_kind = "wiener"; // wiener | sinusoid | none
  double wiener_rate_b = 1.0;
  double theta_m_deg = 5.0;
  std::string freq_law_kind = "uniform";
  double freq_low_hz = 5.0;
  double freq_high_hz = 25.0;
  double freq_value_hz = 10.0;

  // coherence solver
  double gamma = 0.5;
  double tau_max_s = 1.0;
  std::size_t tau_points = 256;
  double tau_min_s = 1e-6;
  std::vector<double> t_grid_s; // empty: job-specific default

  // ensemble
  std::size_t num_realizations = 100000;
  std::uint64_t master_seed = 1;
  std::size_t uav_count = 3;
  std::vector<double> mus_los_aods_deg; // empty: {20, 40, 60}
  bool shared_scatterers = true;
  bool exact_geometry = false;

  std::string output_dir = "wobblesim-out";
  bool quick = false; // Monte Carlo jobs drop to 1e4 realizations

  /// Channel/process views with every default resolved; throw config_error on
  /// inconsistent settings.
  ChannelSpec channel_spec() const;
  PitchProcessSpec pitch_process() const;
  int resolved_num_mpc() const;
  std::size_t resolved_realizations() const;
  std::vector<double> resolved_t_grid() const;
  std::vector<double> resolved_mus_aods_deg() const;
};

/// Parse a JSON config file. Unknown keys are rejected; diagnostics carry
/// 1-based line numbers.
ExperimentConfig load_config_file(const std::string& path);

/// Same, from an in-memory string (the `source` name feeds diagnostics).
ExperimentConfig parse_config(const std::string& text, const std::string& source = "<config>");

/// Fully resolved config as a canonical JSON object; embedded in every output
/// file for reproducibility.
std::string resolved_config_json(const ExperimentConfig& cfg);

/// Execute cfg.job, writing artifacts under cfg.output_dir. Returns an exit
/// status (kExitOk / kExitFailure / kExitInconclusive); configuration errors
/// throw config_error before any file is written.
int run_job(const ExperimentConfig& cfg);

} // namespace wobblesim
