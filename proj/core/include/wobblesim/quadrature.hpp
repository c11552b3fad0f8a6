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
// Fixed-order Gauss-Legendre quadrature with a doubled-order convergence
// check. Integrands here are smooth on compact intervals (exponentials and
// sincs of trig arguments), split at known kinks and, for oscillatory
// frequency integrals, into panels sized by the oscillation count.

#pragma once

#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "wobblesim/spectrum.hpp"

namespace wobblesim {

/// Raised when the order-n and order-2n evaluations disagree beyond the
/// tolerance; quadrature non-convergence is reported, never silently accepted.
struct quadrature_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Nodes and weights on [-1, 1]; cached per order, thread-safe.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const GaussLegendreRule& gauss_legendre(int order);

inline constexpr int kQuadratureOrder = 64;
inline constexpr double kQuadratureRelTol = 1e-8;
inline constexpr double kQuadratureAbsFloor = 1e-12;

template <class F>
double gl_integrate(F&& f, double a, double b, int order) {
  const GaussLegendreRule& rule = gauss_legendre(order);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * sum;
}

template <class F>
double gl_integrate_panels(F&& f, double a, double b, int order, int panels) {
  double sum = 0.0;
  const double width = (b - a) / panels;
  for (int p = 0; p < panels; ++p)
    sum += gl_integrate(f, a + p * width, a + (p + 1) * width, order);
  return sum;
}

/// Integrate with `order` and `2*order` nodes per panel; return the finer
/// value, throw quadrature_error if the two disagree beyond rel_tol (measured
/// against max(|fine|, abs_floor)).
template <class F>
double gl_integrate_checked(F&& f, double a, double b, int order = kQuadratureOrder,
                            int panels = 1, double rel_tol = kQuadratureRelTol,
                            double abs_floor = kQuadratureAbsFloor) {
  const double coarse = gl_integrate_panels(f, a, b, order, panels);
  const double fine = gl_integrate_panels(f, a, b, 2 * order, panels);
  const double scale = std::max(std::abs(fine), abs_floor);
  if (std::abs(fine - coarse) > rel_tol * scale)
    throw quadrature_error("quadrature did not converge between orders " +
                           std::to_string(order) + " and " + std::to_string(2 * order));
  return fine;
}

/// E[f(phi)] under an angle law. For a uniform law the integral is split at
/// the interior `kinks` (e.g. the direct-path AoD where the Laplacian weight
/// is non-smooth) so each piece stays analytic.
template <class F>
double angle_expectation(const AngleLaw& law, std::initializer_list<double> kinks, F&& f,
                         int order = kQuadratureOrder) {
  if (law.kind == AngleLaw::Kind::PointMass) return f(law.value_rad);
  std::vector<double> edges{law.low_rad};
  for (double kink : kinks)
    if (kink > law.low_rad && kink < law.high_rad) edges.push_back(kink);
  edges.push_back(law.high_rad);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    sum += gl_integrate_checked(f, edges[i], edges[i + 1], order);
  return sum / (law.high_rad - law.low_rad);
}

} // namespace wobblesim
