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

#include "wobblesim/geometry.hpp"

#include <stdexcept>

#include "wobblesim/constants.hpp"

namespace wobblesim {

PathGeometry make_path_geometry(double aod_phi_rad, double azimuth_omega_rad,
                                double path_length_at_rest_m, double scatterer_to_ue_m,
                                bool is_los) {
  if (!(aod_phi_rad >= 0.0 && aod_phi_rad < kPi / 2.0))
    throw std::invalid_argument("path geometry: AoD phi must lie in [0, pi/2)");
  if (!(path_length_at_rest_m >= kMinPathRangeM))
    throw std::invalid_argument("path geometry: degenerate range, path shorter than 1 m");
  if (is_los) {
    if (scatterer_to_ue_m != 0.0)
      throw std::invalid_argument("path geometry: direct path must have zero scatterer-UE leg");
  } else if (!(scatterer_to_ue_m > 0.0)) {
    throw std::invalid_argument("path geometry: scattered path needs a positive scatterer-UE leg");
  }
  return PathGeometry{aod_phi_rad, azimuth_omega_rad, path_length_at_rest_m, scatterer_to_ue_m};
}

Point3 transceiver_position(double theta_rad, double antenna_offset_m, double uav_height_m) {
  return {0.0, antenna_offset_m * (1.0 - std::cos(theta_rad)),
          uav_height_m + antenna_offset_m * std::sin(theta_rad)};
}

double exact_path_delta(const Point3& scatterer, double theta_a_rad, double theta_b_rad,
                        double antenna_offset_m, double uav_height_m) {
  const Point3 pa = transceiver_position(theta_a_rad, antenna_offset_m, uav_height_m);
  const Point3 pb = transceiver_position(theta_b_rad, antenna_offset_m, uav_height_m);
  const double da = distance(scatterer, pa);
  const double db = distance(scatterer, pb);
  if (da < kMinPathRangeM || db < kMinPathRangeM)
    throw std::invalid_argument("exact_path_delta: scatterer degenerate with transceiver");
  return db - da;
}

double approx_path_delta(double aod_phi_rad, double theta_a_rad, double theta_b_rad,
                         double antenna_offset_m) {
  return antenna_offset_m * std::cos(aod_phi_rad) * (theta_b_rad - theta_a_rad);
}

Aod aod_of(const Point3& scatterer, double uav_height_m) {
  if (!(scatterer.z < uav_height_m))
    throw std::invalid_argument("aod_of: scatterer at or above the UAV height");
  const double dz = uav_height_m - scatterer.z;
  const double range = std::sqrt(scatterer.x * scatterer.x + scatterer.y * scatterer.y + dz * dz);
  const double phi = std::acos(dz / range);
  const double omega =
      (scatterer.x == 0.0 && scatterer.y == 0.0) ? 0.0 : std::atan2(scatterer.y, scatterer.x);
  return {phi, omega};
}

Point3 scatterer_from_aod(double phi_rad, double omega_rad, double range_m,
                          double uav_height_m) {
  const double rho = range_m * std::sin(phi_rad);
  return {rho * std::cos(omega_rad), rho * std::sin(omega_rad),
          uav_height_m - range_m * std::cos(phi_rad)};
}

} // namespace wobblesim
