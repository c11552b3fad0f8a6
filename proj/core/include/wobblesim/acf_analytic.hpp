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
// Channel autocorrelation by quadrature. Per path departing at phi the pitch
// process contributes a characteristic-function factor
//   Wiener:   exp(-(2 pi^2 / lambda^2) a_D^2 cos^2(phi) b tau)
//   sinusoid: int sinc((2/lambda) a_D cos(phi) theta_m
//                       [sin(2 pi f (t+tau)) - sin(2 pi f t)]) p_F(f) df
// and the ACF sums the direct path (phi_0, deterministic) with N times the
// angle-law expectation of the Laplacian-weighted factor.

#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "wobblesim/spectrum.hpp"
#include "wobblesim/wobble.hpp"

namespace wobblesim {

enum class Provenance { Analytic, MonteCarlo };

/// Sampled ACF over a lag grid, anchored at time t (nonzero only for the
/// non-stationary sinusoid curves).
struct AcfCurve {
  double anchor_t_s = 0.0;
  std::vector<double> taus_s;
  std::vector<std::complex<double>> values;
  double normalizer = 0.0; // max-R reference used for normalized ratios
  Provenance provenance = Provenance::Analytic;
  /// Standard error of the complex mean per lag, sqrt((Var Re + Var Im)/M);
  /// empty for analytic curves.
  std::vector<double> stderrs;

  /// Live evaluator R(anchor_t, anchor_t + tau) for analytic curves; used by
  /// the coherence solver to refine crossings. Not serialized.
  std::function<double(double)> generator;
  /// Exact tau -> infinity limit when known (analytic curves).
  std::optional<double> tail_limit;

  void validate() const;
};

/// E|alpha_0|^2 + N E|alpha_n|^2: the analytic ACF value at tau = 0.
double analytic_total_power(const ChannelSpec& spec);

/// E|alpha_0|^2: K N E[w] under the Laplacian model, or gain^2(phi_0) for the
/// pure direct-path channel (N = 0).
double los_power_coefficient(const ChannelSpec& spec);

/// Stationary ACF under Wiener pitch wobble of rate b.
double acf_wiener(const ChannelSpec& spec, double rate_b, double tau_s);

/// Non-stationary ACF under sinusoidal pitch wobble, anchored at t.
double acf_sinusoid(const ChannelSpec& spec, const PitchProcessSpec& proc, double t_s,
                    double tau_s);

/// t = 0 specialization of acf_sinusoid.
double acf_sinusoid_t0(const ChannelSpec& spec, const PitchProcessSpec& proc, double tau_s);

/// Normalized Rician ratio R(tau; K)/R(0; K) for Wiener wobble: the K/(K+1)
/// direct-path exponential plus the 1/(K+1) Laplacian-averaged multipath term.
double acf_ratio_k(const ChannelSpec& spec, double rate_b, double tau_s, double k_factor);

/// Wobble-induced effective Doppler a_D cos(phi_0) theta_tau / (lambda tau).
double effective_doppler_hz(double theta_tau_rad, double tau_s, const ChannelSpec& spec);

/// Exact tau -> infinity ACF limits (absolute, not normalized).
double acf_wiener_limit(const ChannelSpec& spec, double rate_b);
double acf_sinusoid_limit(const ChannelSpec& spec, const PitchProcessSpec& proc, double t_s);

/// Curve builders; values carry zero imaginary part, normalizer is the total
/// power, generator and tail_limit are attached.
AcfCurve wiener_acf_curve(const ChannelSpec& spec, double rate_b, std::span<const double> taus_s);
AcfCurve sinusoid_acf_curve(const ChannelSpec& spec, const PitchProcessSpec& proc, double t_s,
                            std::span<const double> taus_s);
AcfCurve no_wobble_acf_curve(const ChannelSpec& spec, std::span<const double> taus_s);
/// Dispatch on the process kind.
AcfCurve analytic_acf_curve(const ChannelSpec& spec, const PitchProcessSpec& proc, double t_s,
                            std::span<const double> taus_s);

/// M x M cross-UAV channel correlation at one (t, tau).
struct AutocorrMatrix {
  std::size_t dim = 0;
  std::vector<std::complex<double>> entries; // row-major dim x dim
  std::vector<double> stderrs;               // per entry; empty for analytic

  std::complex<double>& at(std::size_t i, std::size_t k) { return entries[i * dim + k]; }
  const std::complex<double>& at(std::size_t i, std::size_t k) const {
    return entries[i * dim + k];
  }
  double stderr_at(std::size_t i, std::size_t k) const { return stderrs[i * dim + k]; }
};

/// Distributed-MIMO autocorrelation matrix: diagonal entries are the per-UAV
/// single-link ACFs, off-diagonal entries are exactly zero. All UAVs must
/// share wavelength, antenna offset and the pitch-process family.
AutocorrMatrix mus_acf_matrix(std::span<const ChannelSpec> specs, const PitchProcessSpec& proc,
                              double t_s, double tau_s);

} // namespace wobblesim
