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

#include "wobblesim/spectrum.hpp"

#include <cmath>
#include <stdexcept>

#include "wobblesim/random.hpp"

namespace wobblesim {

AngleLaw AngleLaw::uniform(double low_rad, double high_rad) {
  if (!(low_rad >= 0.0 && high_rad > low_rad && high_rad < kPi / 2.0 + 1e-12))
    throw std::invalid_argument("angle law: uniform support must satisfy 0 <= low < high < pi/2");
  AngleLaw law;
  law.kind = Kind::Uniform;
  law.low_rad = low_rad;
  law.high_rad = high_rad;
  return law;
}

AngleLaw AngleLaw::point_mass(double value_rad) {
  if (!(value_rad >= 0.0 && value_rad < kPi / 2.0))
    throw std::invalid_argument("angle law: point mass must lie in [0, pi/2)");
  AngleLaw law;
  law.kind = Kind::PointMass;
  law.value_rad = value_rad;
  return law;
}

double AngleLaw::sample(Rng& rng) const {
  return kind == Kind::Uniform ? rng.uniform(low_rad, high_rad) : value_rad;
}

void ChannelSpec::validate() const {
  if (!(carrier_hz > 0.0)) throw std::invalid_argument("channel spec: carrier must be > 0");
  if (!(antenna_offset_m > 0.0))
    throw std::invalid_argument("channel spec: antenna offset must be > 0");
  if (!(uav_height_m > 0.0)) throw std::invalid_argument("channel spec: UAV height must be > 0");
  if (!(rician_k >= 0.0)) throw std::invalid_argument("channel spec: K-factor must be >= 0");
  if (!(laplace_scale_rad > 0.0))
    throw std::invalid_argument("channel spec: Laplacian scale must be > 0");
  // pi/2 itself is admitted: cos phi_0 then vanishes and the direct path
  // stops reacting to pitch (the constant-ACF limit case).
  if (!(los_aod_rad >= 0.0 && los_aod_rad <= kPi / 2.0))
    throw std::invalid_argument("channel spec: direct-path AoD must lie in [0, pi/2]");
  if (num_mpc < 0) throw std::invalid_argument("channel spec: multipath count must be >= 0");
  const double c_check = wavelength_m() * carrier_hz;
  if (std::abs(c_check - kSpeedOfLightMps) > 1e-9 * kSpeedOfLightMps)
    throw std::invalid_argument("channel spec: wavelength-carrier product is not c");
}

ChannelSpec ChannelSpec::from_wavelength(double wavelength_m) {
  if (!(wavelength_m > 0.0))
    throw std::invalid_argument("channel spec: wavelength must be > 0");
  ChannelSpec spec;
  spec.carrier_hz = kSpeedOfLightMps / wavelength_m;
  return spec;
}

double laplacian_weight(const ChannelSpec& spec, double phi_rad) {
  const double g = spec.gain(phi_rad);
  return g * g / (2.0 * spec.laplace_scale_rad) *
         std::exp(-std::abs(phi_rad - spec.los_aod_rad) / spec.laplace_scale_rad);
}

MpcDraw draw_mpcs(const ChannelSpec& spec, Rng& rng) {
  spec.validate();
  MpcDraw draw;
  const int n = spec.num_mpc;
  draw.angles_rad.resize(n);
  draw.powers.resize(n);
  draw.static_phases_rad.resize(n);
  double power_sum = 0.0;
  for (int i = 0; i < n; ++i) draw.angles_rad[i] = spec.angle_law.sample(rng);
  for (int i = 0; i < n; ++i) {
    draw.powers[i] = laplacian_weight(spec, draw.angles_rad[i]);
    power_sum += draw.powers[i];
  }
  for (int i = 0; i < n; ++i) draw.static_phases_rad[i] = rng.uniform(0.0, 2.0 * kPi);
  if (n == 0) {
    // Pure direct path: K * sum degenerates, use unit power through the gain.
    const double g = spec.gain(spec.los_aod_rad);
    draw.los_power = g * g;
    draw.pure_los_normalized = true;
  } else {
    draw.los_power = spec.rician_k * power_sum;
  }
  return draw;
}

MpcDraw draw_mpcs(const ChannelSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  return draw_mpcs(spec, rng);
}

double total_power(const MpcDraw& draw) {
  double sum = draw.los_power;
  for (double p : draw.powers) sum += p;
  return sum;
}

} // namespace wobblesim
