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

#include "wobblesim/curve_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace wobblesim {

namespace {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

double parse_double(const std::string& field, const char* what) {
  std::size_t used = 0;
  const double value = std::stod(field, &used);
  if (used != field.size())
    throw std::runtime_error(std::string("acf csv: malformed ") + what + " field '" + field +
                             "'");
  return value;
}

} // namespace

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void write_acf_curve(const std::filesystem::path& base, const AcfCurve& curve,
                     const std::string& config_json) {
  curve.validate();
  std::string csv;
  csv += kAcfCsvHeader;
  csv += '\n';
  for (std::size_t i = 0; i < curve.taus_s.size(); ++i) {
    csv += format_double(curve.taus_s[i]);
    csv += ',';
    csv += format_double(curve.values[i].real());
    csv += ',';
    csv += format_double(curve.values[i].imag());
    csv += ',';
    csv += format_double(curve.values[i].real() / curve.normalizer);
    csv += ',';
    if (!curve.stderrs.empty()) csv += format_double(curve.stderrs[i]);
    csv += '\n';
  }
  std::filesystem::path csv_path = base;
  csv_path += ".csv";
  write_file(csv_path, csv);

  json meta;
  meta["schema"] = "wobblesim-acf-curve/1";
  meta["anchor_t_s"] = curve.anchor_t_s;
  meta["normalizer"] = curve.normalizer;
  meta["provenance"] = curve.provenance == Provenance::Analytic ? "analytic" : "montecarlo";
  if (curve.tail_limit)
    meta["tail_limit"] = *curve.tail_limit;
  else
    meta["tail_limit"] = nullptr;
  meta["config"] = json::parse(config_json);
  std::filesystem::path meta_path = base;
  meta_path += ".meta.json";
  write_file(meta_path, meta.dump(2) + "\n");
}

std::pair<AcfCurve, std::string> read_acf_curve(const std::filesystem::path& base) {
  std::filesystem::path csv_path = base;
  csv_path += ".csv";
  std::filesystem::path meta_path = base;
  meta_path += ".meta.json";

  const json meta = json::parse(read_file(meta_path));
  AcfCurve curve;
  curve.anchor_t_s = meta.at("anchor_t_s").get<double>();
  curve.normalizer = meta.at("normalizer").get<double>();
  curve.provenance = meta.at("provenance").get<std::string>() == "analytic"
                         ? Provenance::Analytic
                         : Provenance::MonteCarlo;
  if (!meta.at("tail_limit").is_null()) curve.tail_limit = meta.at("tail_limit").get<double>();

  std::istringstream in(read_file(csv_path));
  std::string line;
  if (!std::getline(in, line) || line != kAcfCsvHeader)
    throw std::runtime_error("acf csv: missing or unexpected header in " + csv_path.string());
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(row, field, ',')) fields.push_back(field);
    if (line.back() == ',') fields.push_back("");
    if (fields.size() != 5)
      throw std::runtime_error("acf csv: expected 5 columns in " + csv_path.string());
    curve.taus_s.push_back(parse_double(fields[0], "tau_s"));
    const double re = parse_double(fields[1], "acf_real");
    const double im = parse_double(fields[2], "acf_imag");
    curve.values.emplace_back(re, im);
    if (!fields[4].empty()) curve.stderrs.push_back(parse_double(fields[4], "stderr"));
  }
  if (!curve.stderrs.empty() && curve.stderrs.size() != curve.values.size())
    throw std::runtime_error("acf csv: stderr column must be empty or complete");
  curve.validate();
  return {std::move(curve), meta.at("config").dump()};
}

} // namespace wobblesim
