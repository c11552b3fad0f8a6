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

#include "wobblesim/wobble.hpp"

#include <cmath>
#include <stdexcept>

#include "wobblesim/random.hpp"

namespace wobblesim {

FreqLaw FreqLaw::uniform(double low_hz, double high_hz) {
  if (!(low_hz > 0.0 && high_hz > low_hz))
    throw std::invalid_argument("freq law: uniform support needs 0 < low < high");
  FreqLaw law;
  law.kind = Kind::Uniform;
  law.low_hz = low_hz;
  law.high_hz = high_hz;
  return law;
}

FreqLaw FreqLaw::point_mass(double value_hz) {
  if (!(value_hz > 0.0)) throw std::invalid_argument("freq law: frequency must be positive");
  FreqLaw law;
  law.kind = Kind::PointMass;
  law.value_hz = value_hz;
  return law;
}

double FreqLaw::sample(Rng& rng) const {
  return kind == Kind::Uniform ? rng.uniform(low_hz, high_hz) : value_hz;
}

double FreqLaw::mean_hz() const {
  return kind == Kind::Uniform ? 0.5 * (low_hz + high_hz) : value_hz;
}

double FreqLaw::min_hz() const { return kind == Kind::Uniform ? low_hz : value_hz; }

double FreqLaw::max_hz() const { return kind == Kind::Uniform ? high_hz : value_hz; }

PitchProcessSpec PitchProcessSpec::wiener(double rate_b) {
  if (!(rate_b > 0.0)) throw std::invalid_argument("pitch process: Wiener rate b must be > 0");
  PitchProcessSpec spec;
  spec.kind = Kind::Wiener;
  spec.wiener_rate_b = rate_b;
  return spec;
}

PitchProcessSpec PitchProcessSpec::sinusoid(double theta_m_rad, FreqLaw freq_law) {
  if (!(theta_m_rad > 0.0))
    throw std::invalid_argument("pitch process: max pitch angle must be > 0");
  PitchProcessSpec spec;
  spec.kind = Kind::Sinusoid;
  spec.max_pitch_theta_m_rad = theta_m_rad;
  spec.freq_law = freq_law;
  spec.exceeds_small_angle = theta_m_rad > deg_to_rad(10.0) * (1.0 + 1e-12);
  return spec;
}

PitchProcessSpec PitchProcessSpec::no_wobble() { return PitchProcessSpec{}; }

namespace {

void check_grid(std::span<const double> times_s) {
  if (times_s.empty()) throw std::invalid_argument("sample_path: empty time grid");
  if (!(times_s[0] >= 0.0)) throw std::invalid_argument("sample_path: times must start at >= 0");
  for (std::size_t i = 1; i < times_s.size(); ++i)
    if (!(times_s[i] > times_s[i - 1]))
      throw std::invalid_argument("sample_path: time grid must be strictly increasing");
}

} // namespace

void sample_path_into(const PitchProcessSpec& spec, std::span<const double> times_s, Rng& rng,
                      std::span<double> values_rad) {
  check_grid(times_s);
  switch (spec.kind) {
    case PitchProcessSpec::Kind::NoWobble:
      for (std::size_t i = 0; i < times_s.size(); ++i) values_rad[i] = 0.0;
      break;
    case PitchProcessSpec::Kind::Wiener: {
      // Cumulative independent Gaussian increments; W(0) = 0, so the value at
      // times[0] > 0 is itself an increment from t = 0.
      double prev_t = 0.0;
      double value = 0.0;
      for (std::size_t i = 0; i < times_s.size(); ++i) {
        const double dt = times_s[i] - prev_t;
        if (dt > 0.0) value += std::sqrt(spec.wiener_rate_b * dt) * rng.gaussian();
        values_rad[i] = value;
        prev_t = times_s[i];
      }
      break;
    }
    case PitchProcessSpec::Kind::Sinusoid: {
      // One (A, F) draw per path.
      const double amplitude =
          rng.uniform(-spec.max_pitch_theta_m_rad, spec.max_pitch_theta_m_rad);
      const double freq = spec.freq_law.sample(rng);
      for (std::size_t i = 0; i < times_s.size(); ++i)
        values_rad[i] = amplitude * std::sin(2.0 * kPi * freq * times_s[i]);
      break;
    }
  }
}

PitchPath sample_path(const PitchProcessSpec& spec, std::span<const double> times_s,
                      std::uint64_t seed) {
  PitchPath path;
  path.seed = seed;
  path.times_s.assign(times_s.begin(), times_s.end());
  path.values_rad.resize(times_s.size());
  Rng rng(seed);
  sample_path_into(spec, times_s, rng, path.values_rad);
  return path;
}

double increment_cf_wiener(double c, double tau_s, double rate_b) {
  if (!(tau_s >= 0.0)) throw std::invalid_argument("increment_cf_wiener: tau must be >= 0");
  return std::exp(-0.5 * c * c * rate_b * tau_s);
}

double sinc_pi(double x) {
  const double px = kPi * x;
  if (std::abs(px) < 1e-8) return 1.0 - px * px / 6.0;
  return std::sin(px) / px;
}

double amplitude_cf_sinusoid(double c, double s, double theta_m_rad) {
  return sinc_pi(c * theta_m_rad * s / kPi);
}

} // namespace wobblesim
