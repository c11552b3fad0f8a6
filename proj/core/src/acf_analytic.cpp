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

#include "wobblesim/acf_analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wobblesim/quadrature.hpp"
#include "parallel_for.hpp"

namespace wobblesim {

namespace {

// Wiener per-path decay rate (2 pi^2 / lambda^2) a_D^2 cos^2(phi) b.
double wiener_rate(const ChannelSpec& spec, double rate_b, double phi_rad) {
  const double lam = spec.wavelength_m();
  const double c = std::cos(phi_rad);
  return 2.0 * kPi * kPi / (lam * lam) * spec.antenna_offset_m * spec.antenna_offset_m * c * c *
         rate_b;
}

// (2 pi / lambda) a_D cos(phi): the phase coefficient multiplying theta.
double phase_coefficient(const ChannelSpec& spec, double phi_rad) {
  return 2.0 * kPi / spec.wavelength_m() * spec.antenna_offset_m * std::cos(phi_rad);
}

// N E[w(phi) f(phi)] over the angle law; zero when there are no MPCs.
template <class F>
double nlos_expectation(const ChannelSpec& spec, F&& f, int order = kQuadratureOrder) {
  if (spec.num_mpc == 0) return 0.0;
  const double value = angle_expectation(
      spec.angle_law, {spec.los_aod_rad},
      [&](double phi) { return laplacian_weight(spec, phi) * f(phi); }, order);
  return spec.num_mpc * value;
}

// Uncheck-flavoured variant used inside the combined coarse/fine convergence
// test of the nested sinusoid integral.
template <class F>
double nlos_expectation_raw(const ChannelSpec& spec, F&& f, int order) {
  if (spec.num_mpc == 0) return 0.0;
  const AngleLaw& law = spec.angle_law;
  auto weighted = [&](double phi) { return laplacian_weight(spec, phi) * f(phi); };
  if (law.kind == AngleLaw::Kind::PointMass) return spec.num_mpc * weighted(law.value_rad);
  double sum = 0.0;
  if (spec.los_aod_rad > law.low_rad && spec.los_aod_rad < law.high_rad) {
    sum += gl_integrate(weighted, law.low_rad, spec.los_aod_rad, order);
    sum += gl_integrate(weighted, spec.los_aod_rad, law.high_rad, order);
  } else {
    sum += gl_integrate(weighted, law.low_rad, law.high_rad, order);
  }
  return spec.num_mpc * sum / (law.high_rad - law.low_rad);
}

// Frequency quadrature nodes with sin-difference values cached. Panelized so
// that each 64-node rule sees at most ~3 oscillation features across the
// support: a feature is one period of sin(2 pi f (t+tau)), and each period
// sweeps the sinc argument over +-(2/lambda) a_D theta_m, adding
// `oscillation_scale` internal sinc lobes on top.
struct FreqRule {
  std::vector<double> sine_diff; // sin(2 pi f (t+tau)) - sin(2 pi f t) per node
  std::vector<double> weight;    // includes the density p_F
};

FreqRule build_freq_rule(const FreqLaw& law, double t_s, double tau_s, int order,
                         double oscillation_scale = 1.0) {
  FreqRule out;
  auto sine_diff = [&](double f) {
    return std::sin(2.0 * kPi * f * (t_s + tau_s)) - std::sin(2.0 * kPi * f * t_s);
  };
  if (law.kind == FreqLaw::Kind::PointMass) {
    out.sine_diff.push_back(sine_diff(law.value_hz));
    out.weight.push_back(1.0);
    return out;
  }
  const double span = law.high_hz - law.low_hz;
  const double periods = span * (std::abs(t_s + tau_s) + std::abs(t_s));
  const double features = periods * std::max(1.0, oscillation_scale);
  const int panels = std::clamp(static_cast<int>(std::ceil(features / 3.0)), 1, 100000);
  const GaussLegendreRule& rule = gauss_legendre(order);
  out.sine_diff.reserve(static_cast<std::size_t>(panels) * rule.nodes.size());
  out.weight.reserve(out.sine_diff.capacity());
  const double width = span / panels;
  for (int p = 0; p < panels; ++p) {
    const double a = law.low_hz + p * width;
    const double mid = a + 0.5 * width;
    const double half = 0.5 * width;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      out.sine_diff.push_back(sine_diff(mid + half * rule.nodes[i]));
      out.weight.push_back(rule.weights[i] * half / span);
    }
  }
  return out;
}

double sinc_lobes(const ChannelSpec& spec, const PitchProcessSpec& proc) {
  return 2.0 / spec.wavelength_m() * spec.antenna_offset_m * proc.max_pitch_theta_m_rad;
}

// TODO: the angle expectation below depends on (t, tau) only through the
// scalar sine difference; caching it as a Chebyshev series in that scalar
// would cut the anchor-sweep cost of the non-stationary solver by ~5x.
double sinusoid_eval(const ChannelSpec& spec, const PitchProcessSpec& proc, double t_s,
                     double tau_s, int order) {
  const FreqRule freq =
      build_freq_rule(proc.freq_law, t_s, tau_s, order, sinc_lobes(spec, proc));
  const double theta_m = proc.max_pitch_theta_m_rad;
  auto path_factor = [&](double phi) {
    const double c = phase_coefficient(spec, phi);
    double acc = 0.0;
    for (std::size_t k = 0; k < freq.sine_diff.size(); ++k)
      acc += freq.weight[k] * amplitude_cf_sinusoid(c, freq.sine_diff[k], theta_m);
    return acc;
  };
  return los_power_coefficient(spec) * path_factor(spec.los_aod_rad) +
         nlos_expectation_raw(spec, path_factor, order);
}

double converged(double coarse, double fine, double scale, const char* what) {
  const double tol = kQuadratureRelTol * std::max(std::abs(fine), 1e-4 * scale);
  if (std::abs(fine - coarse) > tol)
    throw quadrature_error(std::string(what) + ": quadrature did not converge between orders " +
                           std::to_string(kQuadratureOrder) + " and " +
                           std::to_string(2 * kQuadratureOrder));
  return fine;
}

} // namespace

void AcfCurve::validate() const {
  if (taus_s.size() != values.size())
    throw std::invalid_argument("acf curve: lag and value lengths differ");
  if (!stderrs.empty() && stderrs.size() != values.size())
    throw std::invalid_argument("acf curve: stderr length differs");
  for (std::size_t i = 1; i < taus_s.size(); ++i)
    if (!(taus_s[i] > taus_s[i - 1]))
      throw std::invalid_argument("acf curve: lag grid must be strictly increasing");
  if (!(normalizer > 0.0)) throw std::invalid_argument("acf curve: normalizer must be > 0");
  if (taus_s.empty()) return;
  if (provenance == Provenance::Analytic && taus_s.front() == 0.0) {
    if (std::abs(values.front().real() - normalizer) > 1e-9 * normalizer)
      throw std::invalid_argument("acf curve: value at tau = 0 is not the total power");
  }
  const double peak = values.front().real();
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double se = stderrs.empty() ? 0.0 : stderrs[i] + stderrs.front();
    if (std::abs(values[i]) > peak + 3.0 * se + 1e-9 * std::abs(peak))
      throw std::invalid_argument("acf curve: |value| exceeds the tau = 0 power");
  }
}

double los_power_coefficient(const ChannelSpec& spec) {
  if (spec.num_mpc == 0) {
    const double g = spec.gain(spec.los_aod_rad);
    return g * g;
  }
  return spec.rician_k * nlos_expectation(spec, [](double) { return 1.0; });
}

double analytic_total_power(const ChannelSpec& spec) {
  return los_power_coefficient(spec) + nlos_expectation(spec, [](double) { return 1.0; });
}

double acf_wiener(const ChannelSpec& spec, double rate_b, double tau_s) {
  spec.validate();
  if (!(rate_b > 0.0)) throw std::invalid_argument("acf_wiener: rate b must be > 0");
  if (!(tau_s >= 0.0)) throw std::invalid_argument("acf_wiener: tau must be >= 0");
  const double los =
      los_power_coefficient(spec) * std::exp(-wiener_rate(spec, rate_b, spec.los_aod_rad) * tau_s);
  const double nlos = nlos_expectation(
      spec, [&](double phi) { return std::exp(-wiener_rate(spec, rate_b, phi) * tau_s); });
  return los + nlos;
}

double acf_sinusoid(const ChannelSpec& spec, const PitchProcessSpec& proc, double t_s,
                    double tau_s) {
  spec.validate();
  if (proc.kind != PitchProcessSpec::Kind::Sinusoid)
    throw std::invalid_argument("acf_sinusoid: process is not sinusoidal");
  if (!(t_s >= 0.0 && tau_s >= 0.0))
    throw std::invalid_argument("acf_sinusoid: t and tau must be >= 0");
  const double coarse = sinusoid_eval(spec, proc, t_s, tau_s, kQuadratureOrder);
  const double fine = sinusoid_eval(spec, proc, t_s, tau_s, 2 * kQuadratureOrder);
  return converged(coarse, fine, analytic_total_power(spec), "acf_sinusoid");
}

double acf_sinusoid_t0(const ChannelSpec& spec, const PitchProcessSpec& proc, double tau_s) {
  spec.validate();
  if (proc.kind != PitchProcessSpec::Kind::Sinusoid)
    throw std::invalid_argument("acf_sinusoid_t0: process is not sinusoidal");
  if (!(tau_s >= 0.0)) throw std::invalid_argument("acf_sinusoid_t0: tau must be >= 0");
  // Anchored at t = 0 the sine difference collapses to sin(2 pi f tau).
  auto eval = [&](int order) {
    const FreqRule freq =
        build_freq_rule(proc.freq_law, 0.0, tau_s, order, sinc_lobes(spec, proc));
    auto path_factor = [&](double phi) {
      const double c = phase_coefficient(spec, phi);
      double acc = 0.0;
      for (std::size_t k = 0; k < freq.sine_diff.size(); ++k)
        acc += freq.weight[k] *
               amplitude_cf_sinusoid(c, freq.sine_diff[k], proc.max_pitch_theta_m_rad);
      return acc;
    };
    return los_power_coefficient(spec) * path_factor(spec.los_aod_rad) +
           nlos_expectation_raw(spec, path_factor, order);
  };
  return converged(eval(kQuadratureOrder), eval(2 * kQuadratureOrder),
                   analytic_total_power(spec), "acf_sinusoid_t0");
}

double acf_ratio_k(const ChannelSpec& spec, double rate_b, double tau_s, double k_factor) {
  spec.validate();
  if (!(k_factor >= 0.0)) throw std::invalid_argument("acf_ratio_k: K must be >= 0");
  if (!(tau_s >= 0.0)) throw std::invalid_argument("acf_ratio_k: tau must be >= 0");
  const double los_decay = std::exp(-wiener_rate(spec, rate_b, spec.los_aod_rad) * tau_s);
  if (spec.num_mpc == 0) return los_decay;
  const double mean_weight = nlos_expectation(spec, [](double) { return 1.0; });
  const double decayed_weight = nlos_expectation(
      spec, [&](double phi) { return std::exp(-wiener_rate(spec, rate_b, phi) * tau_s); });
  return k_factor / (k_factor + 1.0) * los_decay +
         decayed_weight / ((k_factor + 1.0) * mean_weight);
}

double effective_doppler_hz(double theta_tau_rad, double tau_s, const ChannelSpec& spec) {
  if (!(tau_s > 0.0)) throw std::invalid_argument("effective_doppler: tau must be > 0");
  return spec.antenna_offset_m * std::cos(spec.los_aod_rad) * theta_tau_rad /
         (spec.wavelength_m() * tau_s);
}

double acf_wiener_limit(const ChannelSpec& spec, double rate_b) {
  (void)rate_b;
  // The exponential survives only where cos phi vanishes; a spread angle law
  // carries no mass there, so only boundary atoms contribute.
  auto frozen = [](double phi) {
    const double c = std::cos(phi);
    return c * c < 1e-30;
  };
  double limit = 0.0;
  if (frozen(spec.los_aod_rad)) limit += los_power_coefficient(spec);
  if (spec.num_mpc > 0 && spec.angle_law.kind == AngleLaw::Kind::PointMass &&
      frozen(spec.angle_law.value_rad))
    limit += nlos_expectation(spec, [](double) { return 1.0; });
  return limit;
}

double acf_sinusoid_limit(const ChannelSpec& spec, const PitchProcessSpec& proc, double t_s) {
  spec.validate();
  if (proc.kind != PitchProcessSpec::Kind::Sinusoid)
    throw std::invalid_argument("acf_sinusoid_limit: process is not sinusoidal");
  // As tau grows the phase 2 pi f (t+tau) equidistributes mod 2 pi, so the
  // frequency average tends to a phase average; periodic trapezoid is
  // spectrally accurate for the inner integral.
  constexpr int kPhaseSteps = 512;
  const double theta_m = proc.max_pitch_theta_m_rad;
  // A rule built at (t, tau) = (0, t_s) caches sine_diff = sin(2 pi f t_s),
  // the anchor term that survives inside the limit.
  const FreqRule anchor =
      build_freq_rule(proc.freq_law, 0.0, t_s, kQuadratureOrder, sinc_lobes(spec, proc));
  auto limit_factor = [&](double phi) {
    const double c = phase_coefficient(spec, phi);
    double f_acc = 0.0;
    for (std::size_t k = 0; k < anchor.sine_diff.size(); ++k) {
      double x_acc = 0.0;
      for (int m = 0; m < kPhaseSteps; ++m) {
        const double x = 2.0 * kPi * (m + 0.5) / kPhaseSteps;
        x_acc += amplitude_cf_sinusoid(c, std::sin(x) - anchor.sine_diff[k], theta_m);
      }
      f_acc += anchor.weight[k] * x_acc / kPhaseSteps;
    }
    return f_acc;
  };
  return los_power_coefficient(spec) * limit_factor(spec.los_aod_rad) +
         nlos_expectation(spec, limit_factor);
}

namespace {

AcfCurve build_curve(const ChannelSpec& spec, double anchor_t,
                     std::span<const double> taus_s,
                     const std::function<double(double)>& evaluator,
                     std::optional<double> tail_limit) {
  AcfCurve curve;
  curve.anchor_t_s = anchor_t;
  curve.taus_s.assign(taus_s.begin(), taus_s.end());
  curve.values.resize(taus_s.size());
  curve.normalizer = analytic_total_power(spec);
  curve.provenance = Provenance::Analytic;
  detail::parallel_for(taus_s.size(), [&](std::size_t i) {
    curve.values[i] = std::complex<double>(evaluator(curve.taus_s[i]), 0.0);
  });
  curve.generator = evaluator;
  curve.tail_limit = tail_limit;
  curve.validate();
  return curve;
}

} // namespace

AcfCurve wiener_acf_curve(const ChannelSpec& spec, double rate_b,
                          std::span<const double> taus_s) {
  auto evaluator = [spec, rate_b](double tau) { return acf_wiener(spec, rate_b, tau); };
  return build_curve(spec, 0.0, taus_s, evaluator, acf_wiener_limit(spec, rate_b));
}

AcfCurve sinusoid_acf_curve(const ChannelSpec& spec, const PitchProcessSpec& proc, double t_s,
                            std::span<const double> taus_s) {
  auto evaluator = [spec, proc, t_s](double tau) { return acf_sinusoid(spec, proc, t_s, tau); };
  AcfCurve curve = build_curve(spec, t_s, taus_s, evaluator, acf_sinusoid_limit(spec, proc, t_s));
  return curve;
}

AcfCurve no_wobble_acf_curve(const ChannelSpec& spec, std::span<const double> taus_s) {
  const double power = analytic_total_power(spec);
  auto evaluator = [power](double) { return power; };
  return build_curve(spec, 0.0, taus_s, evaluator, power);
}

AcfCurve analytic_acf_curve(const ChannelSpec& spec, const PitchProcessSpec& proc, double t_s,
                            std::span<const double> taus_s) {
  switch (proc.kind) {
    case PitchProcessSpec::Kind::Wiener:
      return wiener_acf_curve(spec, proc.wiener_rate_b, taus_s);
    case PitchProcessSpec::Kind::Sinusoid:
      return sinusoid_acf_curve(spec, proc, t_s, taus_s);
    case PitchProcessSpec::Kind::NoWobble:
      return no_wobble_acf_curve(spec, taus_s);
  }
  throw std::logic_error("analytic_acf_curve: unknown process kind");
}

AutocorrMatrix mus_acf_matrix(std::span<const ChannelSpec> specs, const PitchProcessSpec& proc,
                              double t_s, double tau_s) {
  if (specs.empty()) throw std::invalid_argument("mus_acf_matrix: need at least one UAV");
  const double lam0 = specs[0].wavelength_m();
  const double offset0 = specs[0].antenna_offset_m;
  for (const ChannelSpec& s : specs) {
    if (std::abs(s.wavelength_m() - lam0) > 1e-12 * lam0)
      throw std::invalid_argument("mus_acf_matrix: UAVs must share the carrier wavelength");
    if (std::abs(s.antenna_offset_m - offset0) > 1e-12 * offset0)
      throw std::invalid_argument("mus_acf_matrix: UAVs must share the antenna offset");
  }
  AutocorrMatrix matrix;
  matrix.dim = specs.size();
  matrix.entries.assign(matrix.dim * matrix.dim, {0.0, 0.0});
  for (std::size_t i = 0; i < specs.size(); ++i) {
    double value = 0.0;
    switch (proc.kind) {
      case PitchProcessSpec::Kind::Wiener:
        value = acf_wiener(specs[i], proc.wiener_rate_b, tau_s);
        break;
      case PitchProcessSpec::Kind::Sinusoid:
        value = acf_sinusoid(specs[i], proc, t_s, tau_s);
        break;
      case PitchProcessSpec::Kind::NoWobble:
        value = analytic_total_power(specs[i]);
        break;
    }
    matrix.at(i, i) = {value, 0.0};
  }
  return matrix;
}

} // namespace wobblesim
