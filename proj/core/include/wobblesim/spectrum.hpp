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
// Rician multipath angular power spectrum: departure-angle sampling, Laplacian
// per-path powers around the direct-path AoD, direct-path power via the Rician
// K-factor, and an optional antenna-gain hook.

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "wobblesim/constants.hpp"

namespace wobblesim {

class Rng;

/// Distribution of the multipath departure angles phi_n.
struct AngleLaw {
  enum class Kind { Uniform, PointMass };

  Kind kind = Kind::Uniform;
  double low_rad = 0.0; // uniform support [low, high]
  double high_rad = deg_to_rad(85.0);
  double value_rad = 0.0; // point mass

  static AngleLaw uniform(double low_rad, double high_rad);
  static AngleLaw point_mass(double value_rad);

  double sample(Rng& rng) const;
};

/// Amplitude gain vs departure angle; empty means unit gain.
using GainPattern = std::function<double(double)>;

struct ChannelSpec {
  double carrier_hz = 6.0e9;
  double antenna_offset_m = 0.4; // a_D
  double uav_height_m = 100.0;   // z_D
  double rician_k = 11.5;
  double laplace_scale_rad = 1.0;         // sigma
  double los_aod_rad = deg_to_rad(20.0);  // phi_0
  int num_mpc = 20;                       // N
  AngleLaw angle_law = AngleLaw::uniform(0.0, deg_to_rad(85.0));
  GainPattern gain_pattern;

  double wavelength_m() const { return kSpeedOfLightMps / carrier_hz; }
  double gain(double phi_rad) const { return gain_pattern ? gain_pattern(phi_rad) : 1.0; }

  /// Throws std::invalid_argument on an inconsistent spec.
  void validate() const;

  /// Spec with the carrier set so that the wavelength is exactly lambda.
  static ChannelSpec from_wavelength(double wavelength_m);
};

/// gain^2(phi) * (1/2 sigma) exp(-|phi - phi_0| / sigma): expected power of one
/// multipath component departing at phi.
double laplacian_weight(const ChannelSpec& spec, double phi_rad);

/// One draw of the multipath environment.
struct MpcDraw {
  std::vector<double> angles_rad;         // phi_n, length N
  std::vector<double> powers;             // |alpha_n|^2, length N
  std::vector<double> static_phases_rad;  // psi_n ~ U[0, 2 pi), length N
  double los_power = 0.0;                 // |alpha_0|^2
  /// True when N = 0 forced the direct-path power to gain^2(phi_0) because the
  /// K * sum definition degenerates.
  bool pure_los_normalized = false;
};

/// Sample angles from the angle law, assign Laplacian powers, set the
/// direct-path power to K times the multipath power sum. Deterministic in
/// (spec, seed).
MpcDraw draw_mpcs(const ChannelSpec& spec, std::uint64_t seed);

/// Same from a live RNG; draw order is angles, then static phases.
MpcDraw draw_mpcs(const ChannelSpec& spec, Rng& rng);

/// los_power + sum of multipath powers; the ACF value at tau = 0.
double total_power(const MpcDraw& draw);

} // namespace wobblesim
