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
// Random-process models for the UAV pitch angle theta(t): a Wiener process
// (independent Gaussian increments, variance b*t), a random sinusoid
// A sin(2 pi F t) with A ~ U[-theta_m, theta_m) and F drawn from a
// configurable law, and the ideal no-wobble platform.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wobblesim/constants.hpp"

namespace wobblesim {

class Rng;

/// Distribution of the sinusoid frequency F (Hz).
struct FreqLaw {
  enum class Kind { Uniform, PointMass };

  Kind kind = Kind::Uniform;
  double low_hz = 5.0;   // uniform support [low, high)
  double high_hz = 25.0;
  double value_hz = 0.0; // point mass

  static FreqLaw uniform(double low_hz, double high_hz);
  static FreqLaw point_mass(double value_hz);

  double sample(Rng& rng) const;
  double mean_hz() const;
  double min_hz() const;
  double max_hz() const;
};

struct PitchProcessSpec {
  enum class Kind { Wiener, Sinusoid, NoWobble };

  Kind kind = Kind::NoWobble;
  double wiener_rate_b = 0.0;         // rad^2/s, Wiener only
  double max_pitch_theta_m_rad = 0.0; // sinusoid only
  FreqLaw freq_law = FreqLaw::uniform(5.0, 25.0);

  /// theta_m beyond 10 degrees leaves the small-angle modelling regime; it is
  /// accepted but flagged, and the CLI prints a warning.
  bool exceeds_small_angle = false;

  static PitchProcessSpec wiener(double rate_b);
  static PitchProcessSpec sinusoid(double theta_m_rad,
                                   FreqLaw freq_law = FreqLaw::uniform(5.0, 25.0));
  static PitchProcessSpec no_wobble();
};

/// One sampled realization of theta(t) on a caller-supplied grid.
struct PitchPath {
  std::vector<double> times_s;
  std::vector<double> values_rad;
  std::uint64_t seed = 0;
};

/// Sample theta on a strictly increasing grid with times[0] >= 0. Identical
/// (spec, times, seed) triples give bit-identical paths.
PitchPath sample_path(const PitchProcessSpec& spec, std::span<const double> times_s,
                      std::uint64_t seed);

/// Same, drawing from a live RNG (used by the ensemble simulator so one
/// realization stream covers angles, phases and the path).
void sample_path_into(const PitchProcessSpec& spec, std::span<const double> times_s, Rng& rng,
                      std::span<double> values_rad);

/// E[exp(j c W(tau))] for a Wiener process of rate b: exp(-c^2 b tau / 2).
double increment_cf_wiener(double c, double tau_s, double rate_b);

/// sin(pi x) / (pi x), exactly 1 at 0.
double sinc_pi(double x);

/// E_A[exp(j c A s)] for A ~ U[-theta_m, theta_m): sinc(c theta_m s / pi).
/// `s` is the sine-difference term sin(2 pi F (t+tau)) - sin(2 pi F t).
double amplitude_cf_sinusoid(double c, double s, double theta_m_rad);

} // namespace wobblesim
