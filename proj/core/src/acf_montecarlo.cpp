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

#include "wobblesim/acf_montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wobblesim/geometry.hpp"
#include "wobblesim/random.hpp"
#include "parallel_for.hpp"

namespace wobblesim {

namespace {

// Fixed reduction granularity: chunk sums are computed independently and
// reduced in index order, so results do not depend on the thread count.
constexpr std::size_t kChunk = 1024;
constexpr std::size_t kMinRealizations = 100;

std::size_t index_on_grid(std::span<const double> grid, double value, const char* what) {
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (std::abs(grid[i] - value) <= 1e-9 * std::max(1.0, std::abs(value))) return i;
  throw std::invalid_argument(std::string(what) + ": time point not on the ensemble grid");
}

// Per-realization random quantities beyond the multipath draw. Drawn in a
// fixed order in every mode so一 a seed means the same environment everywhere.
struct GeometryExtras {
  std::vector<double> scatterer_azimuth_rad;
  std::vector<double> scatterer_height_m;
  double ue_azimuth_rad = 0.0;
};

void draw_geometry_extras(const ChannelSpec& spec, Rng& rng, GeometryExtras& extras) {
  const int n = spec.num_mpc;
  extras.scatterer_azimuth_rad.resize(n);
  extras.scatterer_height_m.resize(n);
  for (int i = 0; i < n; ++i) extras.scatterer_azimuth_rad[i] = rng.uniform(0.0, 2.0 * kPi);
  for (int i = 0; i < n; ++i)
    extras.scatterer_height_m[i] = rng.uniform(0.0, 0.3 * spec.uav_height_m);
  extras.ue_azimuth_rad = rng.uniform(0.0, 2.0 * kPi);
}

// Static per-path complex amplitudes: sqrt(power) with the static phase for
// scattered paths and the exact initial direct-path phase for n = 0.
// `los_phase_offset_rad` models a UAV displaced by many wavelengths, whose
// direct-path length mod lambda is uniform (used by the multi-UAV estimator).
void path_amplitudes(const ChannelSpec& spec, const MpcDraw& draw,
                     std::vector<std::complex<double>>& amps,
                     double los_phase_offset_rad = 0.0) {
  const double k_wave = 2.0 * kPi / spec.wavelength_m();
  const int n = spec.num_mpc;
  amps.resize(n + 1);
  const double d0_rest = spec.uav_height_m / std::cos(spec.los_aod_rad);
  const double chi0 = -k_wave * d0_rest + los_phase_offset_rad;
  amps[0] = std::sqrt(draw.los_power) * std::complex<double>(std::cos(chi0), std::sin(chi0));
  for (int i = 0; i < n; ++i) {
    const double chi = -draw.static_phases_rad[i];
    amps[i + 1] =
        std::sqrt(draw.powers[i]) * std::complex<double>(std::cos(chi), std::sin(chi));
  }
}

struct Workspace {
  std::vector<double> theta_rad;
  std::vector<std::complex<double>> amps;
  std::vector<double> phase_coeff; // approx: (2 pi / lambda) a_D cos(phi_n)
  std::vector<Point3> scatterers;  // exact: index 0 is the UE
  std::vector<double> rest_dist_m;
  GeometryExtras extras;
};

void realize_draws(const ChannelSpec& spec, const PitchProcessSpec& proc,
                   std::span<const double> grid, Rng& rng, Workspace& ws, MpcDraw& draw) {
  draw = draw_mpcs(spec, rng);
  draw_geometry_extras(spec, rng, ws.extras);
  ws.theta_rad.resize(grid.size());
  sample_path_into(proc, grid, rng, ws.theta_rad);
  path_amplitudes(spec, draw, ws.amps);
}

void eval_approx(const ChannelSpec& spec, const MpcDraw& draw, const Workspace& ws,
                 std::span<const double> grid, std::vector<double>& coeff,
                 std::span<std::complex<double>> out) {
  const double k_wave = 2.0 * kPi / spec.wavelength_m();
  const int n = spec.num_mpc;
  coeff.resize(n + 1);
  coeff[0] = k_wave * spec.antenna_offset_m * std::cos(spec.los_aod_rad);
  for (int i = 0; i < n; ++i)
    coeff[i + 1] = k_wave * spec.antenna_offset_m * std::cos(draw.angles_rad[i]);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double theta = ws.theta_rad[k];
    std::complex<double> r{0.0, 0.0};
    for (int p = 0; p <= n; ++p) {
      const double ph = coeff[p] * theta; // path delta a_D cos(phi) theta
      r += ws.amps[p] * std::complex<double>(std::cos(ph), -std::sin(ph));
    }
    out[k] = r;
  }
}

void eval_exact(const ChannelSpec& spec, const MpcDraw& draw, Workspace& ws,
                std::span<const double> grid, std::span<std::complex<double>> out) {
  const double k_wave = 2.0 * kPi / spec.wavelength_m();
  const int n = spec.num_mpc;
  ws.scatterers.resize(n + 1);
  ws.rest_dist_m.resize(n + 1);
  const double ue_range = spec.uav_height_m / std::cos(spec.los_aod_rad);
  ws.scatterers[0] = scatterer_from_aod(spec.los_aod_rad, ws.extras.ue_azimuth_rad, ue_range,
                                        spec.uav_height_m);
  for (int i = 0; i < n; ++i) {
    const double range = (spec.uav_height_m - ws.extras.scatterer_height_m[i]) /
                         std::cos(draw.angles_rad[i]);
    ws.scatterers[i + 1] = scatterer_from_aod(draw.angles_rad[i],
                                              ws.extras.scatterer_azimuth_rad[i], range,
                                              spec.uav_height_m);
  }
  const Point3 rest = transceiver_position(0.0, spec.antenna_offset_m, spec.uav_height_m);
  for (int p = 0; p <= n; ++p) {
    ws.rest_dist_m[p] = distance(ws.scatterers[p], rest);
    if (ws.rest_dist_m[p] < kMinPathRangeM)
      throw std::invalid_argument("exact geometry: scatterer degenerate with the transceiver");
  }
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Point3 pos =
        transceiver_position(ws.theta_rad[k], spec.antenna_offset_m, spec.uav_height_m);
    std::complex<double> r{0.0, 0.0};
    for (int p = 0; p <= n; ++p) {
      const double d = distance(ws.scatterers[p], pos);
      if (d < kMinPathRangeM)
        throw std::invalid_argument("exact geometry: scatterer degenerate with the transceiver");
      const double ph = k_wave * (d - ws.rest_dist_m[p]);
      r += ws.amps[p] * std::complex<double>(std::cos(ph), -std::sin(ph));
    }
    out[k] = r;
  }
}

struct Accumulator {
  std::vector<double> sum_re, sum_im, sumsq_re, sumsq_im;

  explicit Accumulator(std::size_t lags)
      : sum_re(lags, 0.0), sum_im(lags, 0.0), sumsq_re(lags, 0.0), sumsq_im(lags, 0.0) {}

  void add(std::size_t lag, std::complex<double> z) {
    sum_re[lag] += z.real();
    sum_im[lag] += z.imag();
    sumsq_re[lag] += z.real() * z.real();
    sumsq_im[lag] += z.imag() * z.imag();
  }

  void merge(const Accumulator& other) {
    for (std::size_t i = 0; i < sum_re.size(); ++i) {
      sum_re[i] += other.sum_re[i];
      sum_im[i] += other.sum_im[i];
      sumsq_re[i] += other.sumsq_re[i];
      sumsq_im[i] += other.sumsq_im[i];
    }
  }
};

void finalize(const Accumulator& acc, std::size_t count, AcfCurve& curve) {
  const double m = static_cast<double>(count);
  const std::size_t lags = acc.sum_re.size();
  curve.values.resize(lags);
  curve.stderrs.resize(lags);
  for (std::size_t i = 0; i < lags; ++i) {
    const double mean_re = acc.sum_re[i] / m;
    const double mean_im = acc.sum_im[i] / m;
    const double var_re = std::max(0.0, (acc.sumsq_re[i] - m * mean_re * mean_re) / (m - 1.0));
    const double var_im = std::max(0.0, (acc.sumsq_im[i] - m * mean_im * mean_im) / (m - 1.0));
    curve.values[i] = {mean_re, mean_im};
    curve.stderrs[i] = std::sqrt((var_re + var_im) / m);
  }
  double peak = 0.0;
  for (const auto& v : curve.values) peak = std::max(peak, v.real());
  curve.normalizer = peak;
  curve.provenance = Provenance::MonteCarlo;
}

// Chunked deterministic ensemble loop shared by all estimators. `realize`
// fills per-lag products for one realization index into `products`.
template <class Realize>
std::vector<Accumulator> run_ensemble(std::size_t num_realizations, std::size_t lags,
                                      std::size_t accumulators, Realize&& realize) {
  const std::size_t chunks = (num_realizations + kChunk - 1) / kChunk;
  std::vector<std::vector<Accumulator>> chunk_sums(
      chunks, std::vector<Accumulator>(accumulators, Accumulator(lags)));
  detail::parallel_for(chunks, [&](std::size_t c) {
    const std::size_t begin = c * kChunk;
    const std::size_t end = std::min(begin + kChunk, num_realizations);
    thread_local std::vector<std::vector<std::complex<double>>> products;
    products.assign(accumulators, std::vector<std::complex<double>>(lags));
    for (std::size_t idx = begin; idx < end; ++idx) {
      realize(idx, products);
      for (std::size_t a = 0; a < accumulators; ++a)
        for (std::size_t lag = 0; lag < lags; ++lag) chunk_sums[c][a].add(lag, products[a][lag]);
    }
  });
  std::vector<Accumulator> total(accumulators, Accumulator(lags));
  for (std::size_t c = 0; c < chunks; ++c)
    for (std::size_t a = 0; a < accumulators; ++a) total[a].merge(chunk_sums[c][a]);
  return total;
}

} // namespace

void EnsembleConfig::validate() const {
  if (num_realizations < 1)
    throw std::invalid_argument("ensemble config: need at least one realization");
  if (uav_count < 1) throw std::invalid_argument("ensemble config: need at least one UAV");
  if (time_grid_s.empty()) throw std::invalid_argument("ensemble config: empty time grid");
  if (!(time_grid_s[0] >= 0.0))
    throw std::invalid_argument("ensemble config: time grid must start at >= 0");
  for (std::size_t i = 1; i < time_grid_s.size(); ++i)
    if (!(time_grid_s[i] > time_grid_s[i - 1]))
      throw std::invalid_argument("ensemble config: time grid must be strictly increasing");
}

EnsembleConfig EnsembleConfig::for_acf(std::size_t num_realizations, std::uint64_t master_seed,
                                       double t_s, std::span<const double> tau_grid_s,
                                       std::size_t uav_count) {
  EnsembleConfig cfg;
  cfg.num_realizations = num_realizations;
  cfg.master_seed = master_seed;
  cfg.uav_count = uav_count;
  cfg.time_grid_s.push_back(t_s);
  for (double tau : tau_grid_s) cfg.time_grid_s.push_back(t_s + tau);
  std::sort(cfg.time_grid_s.begin(), cfg.time_grid_s.end());
  cfg.time_grid_s.erase(std::unique(cfg.time_grid_s.begin(), cfg.time_grid_s.end()),
                        cfg.time_grid_s.end());
  return cfg;
}

std::vector<std::complex<double>> simulate_received(const ChannelSpec& spec,
                                                    const PitchProcessSpec& proc,
                                                    std::span<const double> times_s,
                                                    std::uint64_t seed, GeometryMode mode) {
  spec.validate();
  Rng rng(seed);
  Workspace ws;
  MpcDraw draw;
  realize_draws(spec, proc, times_s, rng, ws, draw);
  std::vector<std::complex<double>> out(times_s.size());
  if (mode == GeometryMode::Approximate) {
    std::vector<double> coeff;
    eval_approx(spec, draw, ws, times_s, coeff, out);
  } else {
    eval_exact(spec, draw, ws, times_s, out);
  }
  return out;
}

namespace {

AcfCurve make_mc_curve(double t_s, std::span<const double> tau_grid_s) {
  AcfCurve curve;
  curve.anchor_t_s = t_s;
  curve.taus_s.assign(tau_grid_s.begin(), tau_grid_s.end());
  return curve;
}

void check_acf_inputs(const EnsembleConfig& cfg, std::span<const double> tau_grid_s) {
  cfg.validate();
  if (cfg.num_realizations < kMinRealizations)
    throw std::invalid_argument(
        "estimate_acf: fewer than 100 realizations makes the standard errors meaningless");
  if (tau_grid_s.empty()) throw std::invalid_argument("estimate_acf: empty lag grid");
}

} // namespace

AcfCurve estimate_acf(const EnsembleConfig& cfg, const ChannelSpec& spec,
                      const PitchProcessSpec& proc, double t_s,
                      std::span<const double> tau_grid_s, GeometryMode mode) {
  check_acf_inputs(cfg, tau_grid_s);
  spec.validate();
  const std::span<const double> grid(cfg.time_grid_s);
  const std::size_t anchor = index_on_grid(grid, t_s, "estimate_acf");
  std::vector<std::size_t> lag_index(tau_grid_s.size());
  for (std::size_t i = 0; i < tau_grid_s.size(); ++i)
    lag_index[i] = index_on_grid(grid, t_s + tau_grid_s[i], "estimate_acf");

  auto realize = [&](std::size_t idx, std::vector<std::vector<std::complex<double>>>& products) {
    thread_local Workspace ws;
    thread_local std::vector<double> coeff;
    thread_local std::vector<std::complex<double>> signal;
    signal.resize(grid.size());
    Rng rng(derive_seed(cfg.master_seed, idx));
    MpcDraw draw;
    realize_draws(spec, proc, grid, rng, ws, draw);
    if (mode == GeometryMode::Approximate)
      eval_approx(spec, draw, ws, grid, coeff, signal);
    else
      eval_exact(spec, draw, ws, grid, signal);
    for (std::size_t lag = 0; lag < lag_index.size(); ++lag)
      products[0][lag] = signal[anchor] * std::conj(signal[lag_index[lag]]);
  };

  const auto sums = run_ensemble(cfg.num_realizations, tau_grid_s.size(), 1, realize);
  AcfCurve curve = make_mc_curve(t_s, tau_grid_s);
  finalize(sums[0], cfg.num_realizations, curve);
  curve.validate();
  return curve;
}

GeometryModeComparison estimate_acf_exact_vs_approx(const EnsembleConfig& cfg,
                                                    const ChannelSpec& spec,
                                                    const PitchProcessSpec& proc, double t_s,
                                                    std::span<const double> tau_grid_s) {
  check_acf_inputs(cfg, tau_grid_s);
  spec.validate();
  const std::span<const double> grid(cfg.time_grid_s);
  const std::size_t anchor = index_on_grid(grid, t_s, "estimate_acf_exact_vs_approx");
  std::vector<std::size_t> lag_index(tau_grid_s.size());
  for (std::size_t i = 0; i < tau_grid_s.size(); ++i)
    lag_index[i] = index_on_grid(grid, t_s + tau_grid_s[i], "estimate_acf_exact_vs_approx");

  auto realize = [&](std::size_t idx, std::vector<std::vector<std::complex<double>>>& products) {
    thread_local Workspace ws;
    thread_local std::vector<double> coeff;
    thread_local std::vector<std::complex<double>> approx_signal, exact_signal;
    approx_signal.resize(grid.size());
    exact_signal.resize(grid.size());
    Rng rng(derive_seed(cfg.master_seed, idx));
    MpcDraw draw;
    realize_draws(spec, proc, grid, rng, ws, draw);
    eval_approx(spec, draw, ws, grid, coeff, approx_signal);
    eval_exact(spec, draw, ws, grid, exact_signal);
    for (std::size_t lag = 0; lag < lag_index.size(); ++lag) {
      products[0][lag] = approx_signal[anchor] * std::conj(approx_signal[lag_index[lag]]);
      products[1][lag] = exact_signal[anchor] * std::conj(exact_signal[lag_index[lag]]);
    }
  };

  const auto sums = run_ensemble(cfg.num_realizations, tau_grid_s.size(), 2, realize);
  GeometryModeComparison cmp{make_mc_curve(t_s, tau_grid_s), make_mc_curve(t_s, tau_grid_s)};
  finalize(sums[0], cfg.num_realizations, cmp.approx);
  finalize(sums[1], cfg.num_realizations, cmp.exact);
  cmp.approx.validate();
  cmp.exact.validate();
  return cmp;
}

std::vector<AutocorrMatrix> estimate_acf_matrix(const EnsembleConfig& cfg,
                                                std::span<const ChannelSpec> specs,
                                                const PitchProcessSpec& proc, double t_s,
                                                std::span<const double> tau_grid_s,
                                                bool shared_scatterers) {
  check_acf_inputs(cfg, tau_grid_s);
  if (specs.empty()) throw std::invalid_argument("estimate_acf_matrix: need at least one UAV");
  if (cfg.uav_count != specs.size())
    throw std::invalid_argument("estimate_acf_matrix: uav_count does not match the spec list");
  const double lam0 = specs[0].wavelength_m();
  for (const ChannelSpec& s : specs) {
    s.validate();
    if (std::abs(s.wavelength_m() - lam0) > 1e-12 * lam0)
      throw std::invalid_argument("estimate_acf_matrix: UAVs must share the carrier wavelength");
  }
  const std::size_t m = specs.size();
  const std::span<const double> grid(cfg.time_grid_s);
  const std::size_t anchor = index_on_grid(grid, t_s, "estimate_acf_matrix");
  std::vector<std::size_t> lag_index(tau_grid_s.size());
  for (std::size_t i = 0; i < tau_grid_s.size(); ++i)
    lag_index[i] = index_on_grid(grid, t_s + tau_grid_s[i], "estimate_acf_matrix");

  auto realize = [&](std::size_t idx, std::vector<std::vector<std::complex<double>>>& products) {
    thread_local Workspace ws;
    thread_local std::vector<double> coeff;
    thread_local std::vector<std::complex<double>> signals;
    thread_local std::vector<double> shared_angles;
    signals.resize(m * grid.size());
    Rng rng(derive_seed(cfg.master_seed, idx));

    // Shared mode: one angle draw visible to every UAV; each UAV keeps its own
    // Laplacian weighting, static phases and wobble path.
    if (shared_scatterers) {
      shared_angles.resize(specs[0].num_mpc);
      for (double& a : shared_angles) a = specs[0].angle_law.sample(rng);
    }
    for (std::size_t u = 0; u < m; ++u) {
      const ChannelSpec& spec = specs[u];
      MpcDraw draw;
      if (shared_scatterers) {
        draw.angles_rad = shared_angles;
        draw.powers.resize(shared_angles.size());
        double power_sum = 0.0;
        for (std::size_t i = 0; i < shared_angles.size(); ++i) {
          draw.powers[i] = laplacian_weight(spec, shared_angles[i]);
          power_sum += draw.powers[i];
        }
        draw.static_phases_rad.resize(shared_angles.size());
        for (double& p : draw.static_phases_rad) p = rng.uniform(0.0, 2.0 * kPi);
        if (shared_angles.empty()) {
          const double g = spec.gain(spec.los_aod_rad);
          draw.los_power = g * g;
          draw.pure_los_normalized = true;
        } else {
          draw.los_power = spec.rician_k * power_sum;
        }
      } else {
        draw = draw_mpcs(spec, rng);
      }
      // Consume the geometry extras so the M = 1 matrix falls on the same
      // realization stream as estimate_acf.
      draw_geometry_extras(spec, rng, ws.extras);
      // UAV placements are arbitrary relative to the first one, so every
      // further UAV's direct-path length mod lambda is independently uniform.
      // Without this the LoS x LoS cross term between UAVs never averages out.
      const double los_offset = u == 0 ? 0.0 : rng.uniform(0.0, 2.0 * kPi);
      ws.theta_rad.resize(grid.size());
      sample_path_into(proc, grid, rng, ws.theta_rad);
      path_amplitudes(spec, draw, ws.amps, los_offset);
      eval_approx(spec, draw, ws, grid,
                  coeff, std::span<std::complex<double>>(signals).subspan(u * grid.size(),
                                                                          grid.size()));
    }
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t lag = 0; lag < lag_index.size(); ++lag)
          products[i * m + k][lag] = signals[i * grid.size() + anchor] *
                                     std::conj(signals[k * grid.size() + lag_index[lag]]);
  };

  const auto sums = run_ensemble(cfg.num_realizations, tau_grid_s.size(), m * m, realize);

  std::vector<AutocorrMatrix> out(tau_grid_s.size());
  const double count = static_cast<double>(cfg.num_realizations);
  for (std::size_t lag = 0; lag < tau_grid_s.size(); ++lag) {
    AutocorrMatrix& mat = out[lag];
    mat.dim = m;
    mat.entries.resize(m * m);
    mat.stderrs.resize(m * m);
    for (std::size_t e = 0; e < m * m; ++e) {
      const Accumulator& acc = sums[e];
      const double mean_re = acc.sum_re[lag] / count;
      const double mean_im = acc.sum_im[lag] / count;
      const double var_re =
          std::max(0.0, (acc.sumsq_re[lag] - count * mean_re * mean_re) / (count - 1.0));
      const double var_im =
          std::max(0.0, (acc.sumsq_im[lag] - count * mean_im * mean_im) / (count - 1.0));
      mat.entries[e] = {mean_re, mean_im};
      mat.stderrs[e] = std::sqrt((var_re + var_im) / count);
    }
  }
  return out;
}

} // namespace wobblesim
