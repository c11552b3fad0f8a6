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
// Ensemble simulation of the baseband received signal under sampled wobble
// paths and multipath draws, with empirical ACF / autocorrelation-matrix
// estimation. This is the brute-force oracle for the analytic module: every
// realization redraws angles, static phases and the pitch path, matching the
// expectations the analytic formulas take.

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "wobblesim/acf_analytic.hpp"
#include "wobblesim/spectrum.hpp"
#include "wobblesim/wobble.hpp"

namespace wobblesim {

/// Approximate mode drives path-length deltas with a_D cos(phi) theta(t);
/// exact mode places scatterers in 3D and measures true Euclidean distances
/// from the rotated antenna (the end-to-end check of the small-angle
/// approximation).
enum class GeometryMode { Approximate, Exact };

struct EnsembleConfig {
  std::size_t num_realizations = 100000;
  std::uint64_t master_seed = 1;
  std::vector<double> time_grid_s; // strictly increasing
  std::size_t uav_count = 1;

  void validate() const;

  /// Config whose time grid is {t} union {t + tau_k}, the grid estimate_acf
  /// needs.
  static EnsembleConfig for_acf(std::size_t num_realizations, std::uint64_t master_seed,
                                double t_s, std::span<const double> tau_grid_s,
                                std::size_t uav_count = 1);
};

/// One realization of the received signal on `times_s`. Deterministic in
/// (spec, proc, times, seed); the same seed produces the same multipath draw,
/// geometry extras and pitch path in both geometry modes, so mode comparisons
/// share their random numbers.
std::vector<std::complex<double>> simulate_received(const ChannelSpec& spec,
                                                    const PitchProcessSpec& proc,
                                                    std::span<const double> times_s,
                                                    std::uint64_t seed,
                                                    GeometryMode mode = GeometryMode::Approximate);

/// Sample mean of r(t) r*(t+tau) across realizations with per-lag standard
/// errors (of the complex mean). Requires num_realizations >= 100 and t,
/// t+tau_k on the config's time grid. Output is byte-identical for a given
/// config regardless of thread count.
AcfCurve estimate_acf(const EnsembleConfig& cfg, const ChannelSpec& spec,
                      const PitchProcessSpec& proc, double t_s,
                      std::span<const double> tau_grid_s,
                      GeometryMode mode = GeometryMode::Approximate);

/// Both geometry modes from one realization stream (common random numbers):
/// the curve difference isolates the small-angle approximation error instead
/// of Monte Carlo noise.
struct GeometryModeComparison {
  AcfCurve approx;
  AcfCurve exact;
};
GeometryModeComparison estimate_acf_exact_vs_approx(const EnsembleConfig& cfg,
                                                    const ChannelSpec& spec,
                                                    const PitchProcessSpec& proc, double t_s,
                                                    std::span<const double> tau_grid_s);

/// Cross-UAV autocorrelation matrices, one per lag. Wobble paths and static
/// phases are independent per UAV; with `shared_scatterers` the departure
/// angles are drawn once per realization and seen by every UAV, otherwise
/// each UAV gets its own draw. The decorrelation of distinct UAVs must hold
/// either way.
std::vector<AutocorrMatrix> estimate_acf_matrix(const EnsembleConfig& cfg,
                                                std::span<const ChannelSpec> specs,
                                                const PitchProcessSpec& proc, double t_s,
                                                std::span<const double> tau_grid_s,
                                                bool shared_scatterers);

} // namespace wobblesim
