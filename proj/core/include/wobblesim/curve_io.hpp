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
// ACF curve files: a CSV with the fixed schema
//   tau_s,acf_real,acf_imag,acf_norm,stderr
// (UTF-8, LF endings, 17 significant digits; stderr empty for analytic
// curves) plus a sidecar <name>.meta.json holding anchor time, normalizer,
// provenance, tail limit and the fully resolved run configuration.

#pragma once

#include <filesystem>
#include <string>
#include <utility>

#include "wobblesim/acf_analytic.hpp"

namespace wobblesim {

inline constexpr const char* kAcfCsvHeader = "tau_s,acf_real,acf_imag,acf_norm,stderr";

/// Writes `<base>.csv` and `<base>.meta.json`. `config_json` must be a
/// serialized JSON object (use "{}" when there is no run configuration).
void write_acf_curve(const std::filesystem::path& base, const AcfCurve& curve,
                     const std::string& config_json);

/// Reads the pair back; the returned string is the embedded config object.
/// Generators and live state are not serialized, everything else round-trips
/// exactly.
std::pair<AcfCurve, std::string> read_acf_curve(const std::filesystem::path& base);

/// 17-significant-digit decimal form that parses back to the same double.
std::string format_double(double value);

} // namespace wobblesim
