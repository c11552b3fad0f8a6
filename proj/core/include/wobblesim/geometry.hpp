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
// 3D placement of the UAV transceiver, UE and scatterers, exact path lengths
// under pitch rotation, and the small-angle path-length-delta approximation.
//
// Frame: ground = xy-plane, UAV platform in the yz-plane hovering at height
// z_D. The antenna hangs with offset a_D from the platform centroid; at rest
// it sits at (0, 0, z_D). A pitch rotation by theta moves it to
// (0, a_D(1 - cos theta), z_D + a_D sin theta).

#pragma once

#include <cmath>

namespace wobblesim {

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

inline Point3 operator-(const Point3& a, const Point3& b) {
  return {a.x - b.x, a.y - b.y, a.z - b.z};
}

inline double norm(const Point3& p) { return std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z); }

inline double distance(const Point3& a, const Point3& b) { return norm(a - b); }

/// Below this UAV-scatterer range the geometry is degenerate (the a_D << d_n
/// modelling premise is void) and construction is rejected.
inline constexpr double kMinPathRangeM = 1.0;

/// Departure direction of a path leaving the UAV: phi measured from the
/// negative z-axis (downward), omega the azimuth of the scatterer projection.
struct Aod {
  double phi_rad = 0.0;
  double omega_rad = 0.0;
};

/// One propagation path UAV -> (scatterer) -> UE.
struct PathGeometry {
  double aod_phi_rad = 0.0;
  double azimuth_omega_rad = 0.0;
  double path_length_at_rest_m = 0.0; // d_n(0), UAV antenna at rest to scatterer (or UE)
  double scatterer_to_ue_m = 0.0;     // 0 for the direct path
};

/// Validating factory; `is_los` selects the direct path whose scatterer-UE leg
/// must be exactly zero. Throws std::invalid_argument.
PathGeometry make_path_geometry(double aod_phi_rad, double azimuth_omega_rad,
                                double path_length_at_rest_m, double scatterer_to_ue_m,
                                bool is_los);

/// Antenna position after a pitch rotation by theta.
Point3 transceiver_position(double theta_rad, double antenna_offset_m, double uav_height_m);

/// ||scatterer - P(theta_b)|| - ||scatterer - P(theta_a)||, no approximation.
/// Rejects scatterers within kMinPathRangeM of either antenna position.
double exact_path_delta(const Point3& scatterer, double theta_a_rad, double theta_b_rad,
                        double antenna_offset_m, double uav_height_m);

/// Small-angle path-length delta a_D cos(phi) (theta_b - theta_a). Valid when
/// a_D << d_n and |theta| << 1 rad; the caller owns that regime.
double approx_path_delta(double aod_phi_rad, double theta_a_rad, double theta_b_rad,
                         double antenna_offset_m);

/// Departure angles of a scatterer as seen from the at-rest antenna (0,0,z_D).
/// Rejects scatterers at or above the UAV height.
Aod aod_of(const Point3& scatterer, double uav_height_m);

/// Inverse of aod_of: place a point at departure angles (phi, omega) and range
/// from the at-rest antenna.
Point3 scatterer_from_aod(double phi_rad, double omega_rad, double range_m,
                          double uav_height_m);

} // namespace wobblesim
