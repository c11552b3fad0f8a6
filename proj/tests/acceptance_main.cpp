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
// Acceptance suite: end-to-end checks of the headline results on the
// reference scenario (Rician K = 11.5, Laplacian sigma = 1 rad, direct-path
// AoD 20 deg, antenna offset 0.4 m, Wiener rate 1 rad^2/s, pitch sinusoid
// with F ~ U[5, 25) Hz) plus the statistical and limit properties of the
// samplers and solvers. One line per criterion; exit 0 only if all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "wobblesim/acf_analytic.hpp"
#include "wobblesim/acf_montecarlo.hpp"
#include "wobblesim/coherence.hpp"
#include "wobblesim/constants.hpp"
#include "wobblesim/random.hpp"
#include "wobblesim/wobble.hpp"

using namespace wobblesim;

namespace {

constexpr std::size_t kEnsemble = 100000;

ChannelSpec reference_channel(double carrier_hz) {
  ChannelSpec spec;
  spec.carrier_hz = carrier_hz;
  spec.num_mpc = carrier_hz <= 6.0e9 ? 20 : 10;
  return spec;
}

std::vector<double> linspace(double hi, std::size_t n) {
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i)
    xs[i] = hi * static_cast<double>(i) / static_cast<double>(n - 1);
  return xs;
}

// Lag range sized to the process decay (mirrors the mc-validate job).
std::vector<double> mc_lag_grid(const ChannelSpec& spec, const PitchProcessSpec& proc,
                                std::size_t points) {
  double hi = 0.02;
  if (proc.kind == PitchProcessSpec::Kind::Wiener) {
    const double lam = spec.wavelength_m();
    const double c0 = std::cos(spec.los_aod_rad);
    hi = 8.0 / (2.0 * kPi * kPi / (lam * lam) * spec.antenna_offset_m * spec.antenna_offset_m *
                c0 * c0 * proc.wiener_rate_b);
  }
  return linspace(hi, points);
}

double relative_gap(double value, double reference) {
  return std::abs(value - reference) / reference;
}

bool criterion_closed_form(std::string& detail) {
  const ChannelSpec canonical = [] {
    ChannelSpec spec = ChannelSpec::from_wavelength(0.05);
    spec.num_mpc = 0;
    spec.los_aod_rad = deg_to_rad(20.0);
    return spec;
  }();
  const double t_canonical = coherence_time_wiener_los(canonical, 1.0, 0.5);
  if (relative_gap(t_canonical, 6.213e-4) > 1e-3) {
    detail = "canonical point off: " + std::to_string(t_canonical);
    return false;
  }
  double worst = 0.0;
  Rng rng(20260810);
  for (int i = 0; i < 50; ++i) {
    ChannelSpec spec = ChannelSpec::from_wavelength(rng.uniform(0.01, 0.125));
    spec.num_mpc = 0;
    spec.los_aod_rad = rng.uniform(0.0, deg_to_rad(80.0));
    spec.antenna_offset_m = rng.uniform(0.1, 0.5);
    const double rate_b = rng.uniform(0.2, 4.0);
    const double gamma = rng.uniform(0.1, 0.9);
    const double expected = coherence_time_wiener_los(spec, rate_b, gamma);
    const std::vector<double> taus =
        default_tau_grid(std::min(1.0, 50.0 * expected), 256, expected / 1e3);
    const CoherenceResult solved = coherence_time(wiener_acf_curve(spec, rate_b, taus), gamma);
    if (solved.kind != CoherenceKind::Finite) {
      detail = "draw " + std::to_string(i) + " not finite";
      return false;
    }
    worst = std::max(worst, relative_gap(solved.t_c_s, expected));
  }
  std::ostringstream out;
  out << "worst solver-vs-closed-form gap " << worst << ", canonical " << t_canonical << " s";
  detail = out.str();
  return worst <= 1e-3;
}

bool criterion_wiener_multipath(std::string& detail) {
  const ChannelSpec spec = reference_channel(6.0e9);
  const std::vector<double> taus = default_tau_grid(0.1, 256, 1e-7);
  const CoherenceResult r = coherence_time(wiener_acf_curve(spec, 1.0, taus), 0.5);
  if (r.kind != CoherenceKind::Finite) {
    detail = "expected a finite coherence time";
    return false;
  }
  std::ostringstream out;
  out << "T_C = " << r.t_c_s * 1e6 << " us vs 642 us reference";
  detail = out.str();
  return r.t_c_s >= 0.7 * 642e-6 && r.t_c_s <= 1.3 * 642e-6;
}

bool sweep_point(double carrier_hz, double theta_m_deg, double reference_s,
                 std::ostringstream& out) {
  const ChannelSpec spec = reference_channel(carrier_hz);
  const PitchProcessSpec proc = PitchProcessSpec::sinusoid(deg_to_rad(theta_m_deg));
  const std::vector<double> taus = default_tau_grid(1.0, 256, 1e-6);
  const CoherenceResult r = coherence_time(sinusoid_acf_curve(spec, proc, 0.0, taus), 0.5);
  out << carrier_hz / 1e9 << " GHz/" << theta_m_deg << " deg: ";
  if (reference_s <= 0.0) {
    if (r.kind != CoherenceKind::Unbounded) {
      out << "expected unbounded; ";
      return false;
    }
    out << "unbounded (limit " << r.limiting_acf << "); ";
    return r.limiting_acf > 0.5;
  }
  if (r.kind != CoherenceKind::Finite) {
    out << "expected finite; ";
    return false;
  }
  out << r.t_c_s * 1e3 << " ms vs " << reference_s * 1e3 << " ms; ";
  return relative_gap(r.t_c_s, reference_s) <= 0.3;
}

bool criterion_carrier_sweep(std::string& detail) {
  std::ostringstream out;
  bool ok = sweep_point(2.4e9, 5.0, -1.0, out);
  ok = sweep_point(6.0e9, 5.0, 5.18e-3, out) && ok;
  ok = sweep_point(30.0e9, 5.0, 0.97e-3, out) && ok;
  detail = out.str();
  return ok;
}

bool criterion_pitch_sweep(std::string& detail) {
  std::ostringstream out;
  bool ok = sweep_point(2.4e9, 5.0, -1.0, out);
  ok = sweep_point(2.4e9, 7.0, 12.26e-3, out) && ok;
  ok = sweep_point(2.4e9, 10.0, 6.74e-3, out) && ok;
  detail = out.str();
  return ok;
}

bool criterion_mc_oracle(std::string& detail) {
  struct Config {
    double carrier_hz;
    bool wiener;
  };
  const Config configs[] = {{2.4e9, true},  {6.0e9, true},  {30.0e9, true},
                            {2.4e9, false}, {6.0e9, false}, {30.0e9, false}};
  std::ostringstream out;
  bool ok = true;
  std::uint64_t seed = 8800;
  for (const Config& c : configs) {
    const ChannelSpec spec = reference_channel(c.carrier_hz);
    const PitchProcessSpec proc =
        c.wiener ? PitchProcessSpec::wiener(1.0) : PitchProcessSpec::sinusoid(deg_to_rad(5.0));
    const std::vector<double> taus = mc_lag_grid(spec, proc, 128);
    const EnsembleConfig cfg = EnsembleConfig::for_acf(kEnsemble, seed++, 0.0, taus);
    const AcfCurve mc = estimate_acf(cfg, spec, proc, 0.0, taus);
    std::size_t within = 0;
    double worst_imag = 0.0;
    for (std::size_t i = 0; i < taus.size(); ++i) {
      const double analytic = c.wiener ? acf_wiener(spec, 1.0, taus[i])
                                       : acf_sinusoid_t0(spec, proc, taus[i]);
      if (std::abs(mc.values[i].real() - analytic) <= 3.0 * mc.stderrs[i]) ++within;
      worst_imag = std::max(worst_imag, std::abs(mc.values[i].imag()) / mc.stderrs[i]);
    }
    const double frac = static_cast<double>(within) / static_cast<double>(taus.size());
    out << c.carrier_hz / 1e9 << (c.wiener ? "W" : "S") << ":" << 100.0 * frac << "%/"
        << worst_imag << " ";
    if (frac < 0.99 || worst_imag > 3.0) ok = false;
  }
  detail = "within-3SE fraction and worst |imag| z per config: " + out.str();
  return ok;
}

bool criterion_decorrelation(std::string& detail) {
  std::vector<ChannelSpec> specs;
  for (double aod_deg : {20.0, 40.0, 60.0}) {
    ChannelSpec spec = reference_channel(6.0e9);
    spec.los_aod_rad = deg_to_rad(aod_deg);
    specs.push_back(spec);
  }
  const PitchProcessSpec proc = PitchProcessSpec::wiener(1.0);
  const std::vector<double> taus = mc_lag_grid(specs[0], proc, 33);
  const EnsembleConfig cfg = EnsembleConfig::for_acf(kEnsemble, 9900, 0.0, taus, specs.size());
  const auto mats = estimate_acf_matrix(cfg, specs, proc, 0.0, taus, /*shared_scatterers=*/true);
  double worst = 0.0;
  for (std::size_t lag = 0; lag < mats.size(); ++lag) {
    const AutocorrMatrix analytic = mus_acf_matrix(specs, proc, 0.0, taus[lag]);
    for (std::size_t i = 0; i < specs.size(); ++i)
      for (std::size_t k = 0; k < specs.size(); ++k) {
        if (i == k) {
          if (analytic.at(i, k).imag() != 0.0) {
            detail = "analytic diagonal is not real";
            return false;
          }
          continue;
        }
        if (analytic.at(i, k) != std::complex<double>(0.0, 0.0)) {
          detail = "analytic off-diagonal entry is not exactly zero";
          return false;
        }
        worst = std::max(worst, std::abs(mats[lag].at(i, k)) / mats[lag].stderr_at(i, k));
      }
  }
  std::ostringstream out;
  out << "worst off-diagonal |entry|/SE = " << worst << " over " << mats.size() << " lags";
  detail = out.str();
  return worst <= 3.0;
}

double exact_vs_approx_sup(double theta_m_deg) {
  ChannelSpec spec = reference_channel(2.4e9);
  const PitchProcessSpec proc = PitchProcessSpec::sinusoid(deg_to_rad(theta_m_deg));
  const std::vector<double> taus = linspace(0.02, 16);
  const EnsembleConfig cfg = EnsembleConfig::for_acf(kEnsemble, 7700, 0.0, taus);
  const GeometryModeComparison cmp = estimate_acf_exact_vs_approx(cfg, spec, proc, 0.0, taus);
  double sup = 0.0;
  for (std::size_t i = 0; i < taus.size(); ++i)
    sup = std::max(sup, std::abs(cmp.exact.values[i].real() / cmp.exact.normalizer -
                                 cmp.approx.values[i].real() / cmp.approx.normalizer));
  return sup;
}

bool criterion_small_angle(std::string& detail) {
  // Known red: at the 10 deg / 2.4 GHz pairing the small-angle model's own
  // phase-coherent cubic term (theta - sin theta on the direct path) costs
  // ~1.6e-3 of normalized ACF, above the 1e-3 budget; the companion
  // measurement at 5 deg shows the bound holds once theta << 1 rad is
  // respected, so the cross-check machinery itself is sound.
  const double sup_10 = exact_vs_approx_sup(10.0);
  const double sup_5 = exact_vs_approx_sup(5.0);
  std::ostringstream out;
  out << "sup-norm of normalized exact-vs-approx gap = " << sup_10
      << " at 10 deg (companion: " << sup_5 << " at 5 deg, bound 1e-3)";
  detail = out.str();
  return sup_10 <= 1e-3;
}

bool criterion_process_statistics(std::string& detail) {
  std::ostringstream out;
  // Two-sample KS on Wiener increments at the 1% level.
  const PitchProcessSpec wiener = PitchProcessSpec::wiener(1.0);
  {
    const double t1 = 0.03;
    const double tau = 0.02;
    const std::vector<double> grid{tau, t1, t1 + tau};
    std::vector<double> base, shifted;
    for (std::uint64_t i = 0; i < 10000; ++i) {
      const PitchPath path = sample_path(wiener, grid, derive_seed(660, i));
      base.push_back(path.values_rad[0]);
      shifted.push_back(path.values_rad[2] - path.values_rad[1]);
    }
    std::sort(base.begin(), base.end());
    std::sort(shifted.begin(), shifted.end());
    double d = 0.0;
    std::size_t ia = 0, ib = 0;
    while (ia < base.size() && ib < shifted.size()) {
      const double x = std::min(base[ia], shifted[ib]);
      while (ia < base.size() && base[ia] <= x) ++ia;
      while (ib < shifted.size() && shifted[ib] <= x) ++ib;
      d = std::max(d, std::abs(static_cast<double>(ia) - static_cast<double>(ib)) / 10000.0);
    }
    const double critical = 1.6276236307187293 * std::sqrt(2.0 / 10000.0);
    out << "KS " << d << " < " << critical << "; ";
    if (d >= critical) {
      detail = out.str() + "stationary-increment KS rejected";
      return false;
    }
  }
  // Marginal variance at t = 0.04 s.
  {
    const std::vector<double> grid{0.04};
    double sum = 0.0, sumsq = 0.0;
    const std::size_t n = 100000;
    for (std::uint64_t i = 0; i < n; ++i) {
      const double v = sample_path(wiener, grid, derive_seed(661, i)).values_rad[0];
      sum += v;
      sumsq += v * v;
    }
    const double mean = sum / n;
    const double var = (sumsq - n * mean * mean) / (n - 1.0);
    const double se = var * std::sqrt(2.0 / (n - 1.0));
    out << "var(0.04s) = " << var << " +- " << se << "; ";
    if (std::abs(var - 0.04) > 3.0 * se) {
      detail = out.str() + "marginal variance off";
      return false;
    }
  }
  // Sinusoid boundedness over 1e6 samples.
  {
    const PitchProcessSpec sinusoid = PitchProcessSpec::sinusoid(deg_to_rad(5.0));
    const std::vector<double> grid = linspace(1.0, 100);
    std::size_t violations = 0;
    for (std::uint64_t i = 0; i < 10000; ++i) {
      const PitchPath path = sample_path(sinusoid, grid, derive_seed(662, i));
      for (double v : path.values_rad)
        if (!(std::abs(v) <= sinusoid.max_pitch_theta_m_rad)) ++violations;
    }
    out << "bound violations " << violations << "/1e6";
    if (violations != 0) {
      detail = out.str();
      return false;
    }
  }
  detail = out.str();
  return true;
}

bool criterion_limits(std::string& detail) {
  std::ostringstream out;
  const ChannelSpec spec = reference_channel(6.0e9);
  const std::vector<double> taus = default_tau_grid(1.0, 128, 1e-6);

  // No wobble: constant ACF, unbounded coherence.
  const AcfCurve flat = no_wobble_acf_curve(spec, taus);
  for (const auto& v : flat.values)
    if (relative_gap(v.real(), flat.normalizer) > 1e-12) {
      detail = "no-wobble curve is not constant";
      return false;
    }
  const CoherenceResult unbounded = coherence_time(flat, 0.5);
  if (unbounded.kind != CoherenceKind::Unbounded ||
      std::abs(unbounded.limiting_acf - 1.0) > 1e-9) {
    detail = "no-wobble coherence is not unbounded at 1";
    return false;
  }

  // Zero-lag normalization and the gamma = 1 boundary.
  const AcfCurve wiener = wiener_acf_curve(spec, 1.0, taus);
  if (relative_gap(wiener.values.front().real(), analytic_total_power(spec)) > 1e-9) {
    detail = "zero-lag ACF is not the total power";
    return false;
  }
  const CoherenceResult zero = coherence_time(wiener, 1.0);
  if (zero.kind != CoherenceKind::Finite || zero.t_c_s != 0.0) {
    detail = "gamma = 1 did not give T_C = 0";
    return false;
  }

  // Scaling laws through the full solver, 0.1% tolerance.
  ChannelSpec los = ChannelSpec::from_wavelength(0.05);
  los.num_mpc = 0;
  los.los_aod_rad = deg_to_rad(20.0);
  auto solve = [&](const ChannelSpec& s, double rate_b) {
    const double guess = coherence_time_wiener_los(s, rate_b, 0.5);
    const std::vector<double> grid = default_tau_grid(50.0 * guess, 256, guess / 1e3);
    const CoherenceResult r = coherence_time(wiener_acf_curve(s, rate_b, grid), 0.5);
    return r.t_c_s;
  };
  const double base = solve(los, 1.0);
  const double doubled_rate = solve(los, 2.0);
  ChannelSpec wide = los;
  wide.antenna_offset_m *= 2.0;
  const double doubled_offset = solve(wide, 1.0);
  out << "T_C scaling: b x2 -> " << base / doubled_rate << " (want 2), a_D x2 -> "
      << base / doubled_offset << " (want 4)";
  detail = out.str();
  return relative_gap(doubled_rate, base / 2.0) <= 1e-3 &&
         relative_gap(doubled_offset, base / 4.0) <= 1e-3;
}

} // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<bool(std::string&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "closed-form coherence consistency", criterion_closed_form},
      {2, "Wiener multipath coherence time at 6 GHz", criterion_wiener_multipath},
      {3, "sinusoid carrier sweep 2.4/6/30 GHz", criterion_carrier_sweep},
      {4, "sinusoid pitch sweep 5/7/10 deg at 2.4 GHz", criterion_pitch_sweep},
      {5, "Monte Carlo matches analytic ACF (6 configs, 1e5)", criterion_mc_oracle},
      {6, "distributed-MIMO decorrelation (M = 3, shared scatterers)", criterion_decorrelation},
      {7, "exact vs small-angle geometry within 1e-3", criterion_small_angle},
      {8, "pitch-process statistics (KS, variance, bound)", criterion_process_statistics},
      {9, "degenerate and limit properties", criterion_limits},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] C%d %s (%s) [%.1f s]\n", ok ? "PASS" : "FAIL", c.id, c.title,
                detail.c_str(), secs);
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  if (failures) std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
