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
// Coherence time: first lag where the normalized ACF drops to the threshold
// gamma, the min-over-anchors variant for non-stationary processes, and the
// closed form for a Wiener direct-path channel.

#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "wobblesim/acf_analytic.hpp"

namespace wobblesim {

/// Search window exhausted while the curve is still heading down: the
/// crossing lies beyond the window and the result is neither Finite nor
/// Unbounded. Distinct from all other failures so callers can map it to its
/// own exit code.
struct inconclusive_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class CoherenceKind { Finite, Unbounded };

struct CoherenceResult {
  CoherenceKind kind = CoherenceKind::Finite;
  double t_c_s = 0.0;        // Finite only
  double limiting_acf = 0.0; // Unbounded only; normalized inf of the ACF
  double anchor_t_s = 0.0;
  double threshold_gamma = 0.0;
};

/// Threshold crossing on a sampled curve. Grid scan first, then refinement:
/// bisection through the curve's generator when present, linear interpolation
/// otherwise. Monte Carlo curves certify a crossing only when
/// value + 3 stderr <= gamma * max, so noise cannot fake one.
///
/// Unbounded needs a certificate: a flat tail (last decade peak-to-peak below
/// 1e-4 of the max), a known tail limit above gamma with the whole window
/// above gamma, or a contracting oscillation envelope whose midline stays
/// above gamma. Otherwise inconclusive_error.
CoherenceResult coherence_time(const AcfCurve& curve, double gamma);

enum class TcOutcome { Finite, Unbounded, Inconclusive };

struct CoherenceTableEntry {
  double t_s = 0.0;
  TcOutcome outcome = TcOutcome::Inconclusive;
  double value = 0.0; // t_c (Finite), limiting ACF (Unbounded), window min ratio (Inconclusive)
};

struct NonstationaryCoherence {
  CoherenceResult overall;
  std::vector<CoherenceTableEntry> table;
};

/// T_C(t) per anchor from R(t, t+tau), minimized over the anchor grid.
/// `acf_fn(t, tau)` returns the absolute ACF; `tail_limit_fn`, when given,
/// supplies the exact tau -> infinity limit per anchor. Unbounded only when
/// every anchor is Unbounded; inconclusive anchors surface as an error only
/// when no anchor yields a finite crossing.
NonstationaryCoherence coherence_time_nonstationary(
    const std::function<double(double, double)>& acf_fn, double gamma,
    std::span<const double> t_grid_s, std::span<const double> tau_grid_s,
    const std::function<double(double)>& tail_limit_fn = {});

/// Closed form for the Wiener direct-path channel:
/// lambda^2 log(1/gamma) / (2 b pi^2 a_D^2 cos^2 phi_0). Requires
/// gamma in (0, 1) and cos phi_0 != 0.
double coherence_time_wiener_los(const ChannelSpec& spec, double rate_b, double gamma);

/// Default lag grid: tau = 0, a log head resolving sub-ms crossings, then a
/// linear tail out to tau_max.
std::vector<double> default_tau_grid(double tau_max_s = 1.0, std::size_t points = 256,
                                     double tau_min_s = 1e-6);

} // namespace wobblesim
