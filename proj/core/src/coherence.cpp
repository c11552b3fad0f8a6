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

#include "wobblesim/coherence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "parallel_for.hpp"

namespace wobblesim {

namespace {

constexpr double kFlatTailTol = 1e-4;
constexpr double kBisectRelTol = 1e-6;

struct TailStats {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
};

TailStats tail_stats(std::span<const double> taus, std::span<const double> ratios,
                     double tau_lo, double tau_hi) {
  TailStats s{std::numeric_limits<double>::infinity(),
              -std::numeric_limits<double>::infinity(), 0.0};
  std::size_t count = 0;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    if (taus[i] < tau_lo || taus[i] > tau_hi) continue;
    s.min = std::min(s.min, ratios[i]);
    s.max = std::max(s.max, ratios[i]);
    s.mean += ratios[i];
    ++count;
  }
  if (count == 0) return {0.0, 0.0, 0.0};
  s.mean /= static_cast<double>(count);
  return s;
}

} // namespace

CoherenceResult coherence_time(const AcfCurve& curve, double gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0))
    throw std::invalid_argument("coherence_time: gamma must lie in (0, 1]");
  curve.validate();
  if (curve.taus_s.size() < 2)
    throw std::invalid_argument("coherence_time: need at least two lag samples");

  const bool monte_carlo = curve.provenance == Provenance::MonteCarlo;
  const std::size_t n = curve.taus_s.size();

  double peak = -std::numeric_limits<double>::infinity();
  for (const auto& v : curve.values) peak = std::max(peak, v.real());
  if (!(peak > 0.0)) throw std::invalid_argument("coherence_time: curve has no positive peak");

  std::vector<double> ratios(n);
  for (std::size_t i = 0; i < n; ++i) ratios[i] = curve.values[i].real() / peak;

  // First certified grid crossing.
  std::size_t crossing = n;
  for (std::size_t i = 0; i < n; ++i) {
    const double upper =
        monte_carlo && !curve.stderrs.empty() ? ratios[i] + 3.0 * curve.stderrs[i] / peak
                                              : ratios[i];
    if (upper <= gamma) {
      crossing = i;
      break;
    }
  }

  if (crossing < n) {
    double t_c = curve.taus_s[crossing];
    if (crossing > 0) {
      double lo = curve.taus_s[crossing - 1];
      double hi = curve.taus_s[crossing];
      if (curve.generator) {
        while (hi - lo > kBisectRelTol * std::max(hi, 1e-300)) {
          const double mid = 0.5 * (lo + hi);
          if (curve.generator(mid) / peak > gamma)
            lo = mid;
          else
            hi = mid;
        }
        t_c = 0.5 * (lo + hi);
      } else {
        const double r0 = ratios[crossing - 1];
        const double r1 = ratios[crossing];
        t_c = r0 > r1 ? std::clamp(lo + (r0 - gamma) / (r0 - r1) * (hi - lo), lo, hi) : hi;
      }
    }
    return {CoherenceKind::Finite, t_c, 0.0, curve.anchor_t_s, gamma};
  }

  // No crossing: certify a plateau or report the window as exhausted.
  const double tau_max = curve.taus_s.back();
  const TailStats tail = tail_stats(curve.taus_s, ratios, tau_max / 10.0, tau_max);

  if (tail.max - tail.min < kFlatTailTol)
    return {CoherenceKind::Unbounded, 0.0, tail.mean, curve.anchor_t_s, gamma};

  const double window_min = *std::min_element(ratios.begin(), ratios.end());
  if (curve.tail_limit) {
    const double limit_ratio = *curve.tail_limit / peak;
    if (limit_ratio > gamma && window_min > gamma)
      return {CoherenceKind::Unbounded, 0.0, limit_ratio, curve.anchor_t_s, gamma};
    throw inconclusive_error(
        "coherence_time: no crossing inside the window but the ACF limit sits at or below "
        "gamma; enlarge the search window");
  }

  // Damped-oscillation certificate: envelope contracting across the tail
  // decade with the midline parked above gamma.
  const TailStats first_half = tail_stats(curve.taus_s, ratios, tau_max / 10.0, 0.55 * tau_max);
  const TailStats second_half = tail_stats(curve.taus_s, ratios, 0.55 * tau_max, tau_max);
  const double pp1 = first_half.max - first_half.min;
  const double pp2 = second_half.max - second_half.min;
  if (window_min > gamma && pp2 <= 0.5 * pp1 &&
      std::abs(second_half.mean - first_half.mean) < 1e-3)
    return {CoherenceKind::Unbounded, 0.0, second_half.mean, curve.anchor_t_s, gamma};

  throw inconclusive_error(
      "coherence_time: search window exhausted while the ACF is still varying; no crossing "
      "found and no plateau certified");
}

NonstationaryCoherence coherence_time_nonstationary(
    const std::function<double(double, double)>& acf_fn, double gamma,
    std::span<const double> t_grid_s, std::span<const double> tau_grid_s,
    const std::function<double(double)>& tail_limit_fn) {
  if (t_grid_s.empty())
    throw std::invalid_argument("coherence_time_nonstationary: empty anchor grid");
  if (!(gamma > 0.0 && gamma <= 1.0))
    throw std::invalid_argument("coherence_time_nonstationary: gamma must lie in (0, 1]");

  NonstationaryCoherence out;
  out.table.resize(t_grid_s.size());
  std::vector<CoherenceResult> anchor_results(t_grid_s.size());

  // Anchors are independent; evaluate them in parallel into fixed slots.
  detail::parallel_for(t_grid_s.size(), [&](std::size_t j) {
    const double t = t_grid_s[j];
    AcfCurve curve;
    curve.anchor_t_s = t;
    curve.taus_s.assign(tau_grid_s.begin(), tau_grid_s.end());
    curve.values.resize(curve.taus_s.size());
    for (std::size_t i = 0; i < curve.taus_s.size(); ++i)
      curve.values[i] = {acf_fn(t, curve.taus_s[i]), 0.0};
    // Normalized per anchor: each R(t, .) against its own window max.
    double peak = 0.0;
    for (const auto& v : curve.values) peak = std::max(peak, v.real());
    curve.normalizer = peak;
    curve.generator = [&acf_fn, t](double tau) { return acf_fn(t, tau); };
    if (tail_limit_fn) curve.tail_limit = tail_limit_fn(t);

    CoherenceTableEntry entry;
    entry.t_s = t;
    try {
      const CoherenceResult r = coherence_time(curve, gamma);
      anchor_results[j] = r;
      if (r.kind == CoherenceKind::Finite) {
        entry.outcome = TcOutcome::Finite;
        entry.value = r.t_c_s;
      } else {
        entry.outcome = TcOutcome::Unbounded;
        entry.value = r.limiting_acf;
      }
    } catch (const inconclusive_error&) {
      entry.outcome = TcOutcome::Inconclusive;
      double min_ratio = std::numeric_limits<double>::infinity();
      for (const auto& v : curve.values) min_ratio = std::min(min_ratio, v.real() / peak);
      entry.value = min_ratio;
    }
    out.table[j] = entry;
  });

  bool any_finite = false;
  bool any_inconclusive = false;
  CoherenceResult best{};
  double worst_limit = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < out.table.size(); ++j) {
    switch (out.table[j].outcome) {
      case TcOutcome::Finite:
        if (!any_finite || out.table[j].value < best.t_c_s) best = anchor_results[j];
        any_finite = true;
        break;
      case TcOutcome::Unbounded:
        worst_limit = std::min(worst_limit, out.table[j].value);
        break;
      case TcOutcome::Inconclusive:
        any_inconclusive = true;
        break;
    }
  }

  if (any_finite) {
    // An inconclusive anchor has no crossing inside the window, so its T_C
    // exceeds every in-window crossing and cannot beat the minimum.
    out.overall = best;
    return out;
  }
  if (any_inconclusive)
    throw inconclusive_error(
        "coherence_time_nonstationary: no anchor produced a finite coherence time and at "
        "least one window was exhausted while still varying");
  out.overall = {CoherenceKind::Unbounded, 0.0, worst_limit, t_grid_s[0], gamma};
  return out;
}

double coherence_time_wiener_los(const ChannelSpec& spec, double rate_b, double gamma) {
  spec.validate();
  if (!(rate_b > 0.0))
    throw std::invalid_argument("coherence_time_wiener_los: rate b must be > 0");
  if (!(gamma > 0.0 && gamma < 1.0))
    throw std::invalid_argument("coherence_time_wiener_los: gamma must lie in (0, 1)");
  const double c = std::cos(spec.los_aod_rad);
  if (c * c < 1e-30)
    throw std::invalid_argument(
        "coherence_time_wiener_los: departure angle pi/2 gives an infinite coherence time; "
        "use coherence_time on the constant curve instead");
  const double lam = spec.wavelength_m();
  return lam * lam * std::log(1.0 / gamma) /
         (2.0 * rate_b * kPi * kPi * spec.antenna_offset_m * spec.antenna_offset_m * c * c);
}

std::vector<double> default_tau_grid(double tau_max_s, std::size_t points, double tau_min_s) {
  if (!(tau_max_s > tau_min_s && tau_min_s > 0.0))
    throw std::invalid_argument("default_tau_grid: need 0 < tau_min < tau_max");
  if (points < 8) throw std::invalid_argument("default_tau_grid: need at least 8 points");
  std::vector<double> grid;
  grid.reserve(points);
  grid.push_back(0.0);
  const double knee = tau_max_s / 10.0;
  const std::size_t n_log = points / 2;
  const std::size_t n_lin = points - 1 - n_log;
  for (std::size_t i = 0; i < n_log; ++i) {
    const double u = static_cast<double>(i) / static_cast<double>(n_log - 1);
    grid.push_back(tau_min_s * std::pow(knee / tau_min_s, u));
  }
  for (std::size_t i = 1; i <= n_lin; ++i)
    grid.push_back(knee + (tau_max_s - knee) * static_cast<double>(i) /
                              static_cast<double>(n_lin));
  return grid;
}

} // namespace wobblesim
