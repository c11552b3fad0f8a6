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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "wobblesim/acf_analytic.hpp"
#include "wobblesim/coherence.hpp"
#include "wobblesim/curve_io.hpp"
#include "wobblesim/experiment.hpp"

using namespace wobblesim;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("wobblesim_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

} // namespace

TEST_CASE("config defaults and the carrier-dependent multipath count") {
  const ExperimentConfig cfg = parse_config("{}");
  CHECK(cfg.carrier_hz == 6.0e9);
  CHECK(cfg.resolved_num_mpc() == 20);
  ExperimentConfig mmwave = cfg;
  mmwave.carrier_hz = 30.0e9;
  CHECK(mmwave.resolved_num_mpc() == 10);
  ExperimentConfig forced = mmwave;
  forced.num_mpc = 7;
  CHECK(forced.resolved_num_mpc() == 7);

  const ChannelSpec spec = cfg.channel_spec();
  CHECK(spec.rician_k == 11.5);
  CHECK(spec.los_aod_rad == doctest::Approx(deg_to_rad(20.0)));
  CHECK(spec.num_mpc == 20);
}

TEST_CASE("unknown keys are rejected with a line number") {
  const std::string text = R"({
  "job": "acf",
  "channel": {
    "carrier_hz": 2.4e9,
    "carier_hz": 1.0
  }
})";
  try {
    parse_config(text, "test.json");
    FAIL("expected config_error");
  } catch (const config_error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("test.json:5") != std::string::npos);
    CHECK(msg.find("carier_hz") != std::string::npos);
  }
}

TEST_CASE("malformed JSON reports the failing line") {
  const std::string text = "{\n  \"job\": \"acf\",\n  broken\n}";
  try {
    parse_config(text, "broken.json");
    FAIL("expected config_error");
  } catch (const config_error& e) {
    CHECK(std::string(e.what()).find("broken.json:3") != std::string::npos);
  }
}

TEST_CASE("wrong-typed and contradictory keys are rejected") {
  CHECK_THROWS_AS(parse_config(R"({"channel": {"carrier_hz": "fast"}})"), config_error);
  CHECK_THROWS_AS(parse_config(R"({"channel": {"carrier_hz": 6e9, "wavelength_m": 0.05}})"),
                  config_error);
  CHECK_THROWS_AS(parse_config(R"({"job": "warp"})"), config_error);
  CHECK_THROWS_AS(parse_config(R"({"process": {"kind": "brownian-bridge"}})"), config_error);
}

TEST_CASE("wavelength may replace the carrier") {
  const ExperimentConfig cfg = parse_config(R"({"channel": {"wavelength_m": 0.05}})");
  CHECK(cfg.channel_spec().wavelength_m() == doctest::Approx(0.05).epsilon(1e-12));
}

TEST_CASE("curve files round-trip byte for byte") {
  const fs::path dir = fresh_dir("roundtrip");
  ChannelSpec spec;
  const std::vector<double> taus = default_tau_grid(0.01, 48, 1e-6);
  const AcfCurve curve = wiener_acf_curve(spec, 1.0, taus);
  const ExperimentConfig cfg = parse_config("{}");

  write_acf_curve(dir / "curve", curve, resolved_config_json(cfg));
  const auto [back, config] = read_acf_curve(dir / "curve");
  CHECK(back.taus_s == curve.taus_s);
  CHECK(back.values == curve.values);
  CHECK(back.normalizer == curve.normalizer);
  CHECK(back.anchor_t_s == curve.anchor_t_s);
  CHECK(back.provenance == curve.provenance);
  CHECK(back.tail_limit == curve.tail_limit);

  write_acf_curve(dir / "curve2", back, config);
  CHECK(slurp(dir / "curve.csv") == slurp(dir / "curve2.csv"));
  CHECK(slurp(dir / "curve.meta.json") == slurp(dir / "curve2.meta.json"));

  const std::string csv = slurp(dir / "curve.csv");
  CHECK(csv.rfind("tau_s,acf_real,acf_imag,acf_norm,stderr\n", 0) == 0);
  CHECK(csv.find('\r') == std::string::npos);
}

TEST_CASE("acf job with no wobble emits a constant unit-normalized curve") {
  const fs::path dir = fresh_dir("acf_nowobble");
  ExperimentConfig cfg = parse_config(R"({"job": "acf", "process": {"kind": "none"}})");
  cfg.output_dir = dir.string();
  cfg.tau_points = 32;
  CHECK(run_job(cfg) == kExitOk);
  const auto [curve, config] = read_acf_curve(dir / "acf_none");
  for (const auto& v : curve.values)
    CHECK(v.real() / curve.normalizer == doctest::Approx(1.0).epsilon(1e-12));
  const json embedded = json::parse(config);
  CHECK(embedded.at("process").at("kind") == "none");
  CHECK(embedded.at("channel").at("num_mpc") == 20);
}

TEST_CASE("figure3 quick run reproduces the carrier sweep shape") {
  const fs::path dir = fresh_dir("figure3");
  ExperimentConfig cfg = parse_config(R"({"job": "figure3"})");
  cfg.output_dir = dir.string();
  cfg.tau_points = 128; // keep the unit test snappy
  CHECK(run_job(cfg) == kExitOk);

  const json summary = json::parse(slurp(dir / "figure3_summary.json"));
  REQUIRE(summary.at("sweep").size() == 3);
  CHECK(summary.at("sweep")[0].at("coherence").at("kind") == "unbounded");
  CHECK(summary.at("sweep")[1].at("coherence").at("kind") == "finite");
  CHECK(summary.at("sweep")[2].at("coherence").at("kind") == "finite");
  const double t6 = summary.at("sweep")[1].at("coherence").at("t_c_s").get<double>();
  const double t30 = summary.at("sweep")[2].at("coherence").at("t_c_s").get<double>();
  CHECK(t6 > t30);
  CHECK(summary.at("sweep")[1].at("num_mpc") == 20);
  CHECK(summary.at("sweep")[2].at("num_mpc") == 10);
  CHECK(fs::exists(dir / "figure3_fc2.4ghz.csv"));
  CHECK(fs::exists(dir / "figure3_fc2.4ghz.meta.json"));
}

TEST_CASE("repeated runs produce byte-identical artifacts") {
  const fs::path dir_a = fresh_dir("determinism_a");
  const fs::path dir_b = fresh_dir("determinism_b");
  ExperimentConfig cfg = parse_config(
      R"({"job": "mc-validate", "quick": true, "ensemble": {"master_seed": 424242}})");
  cfg.tau_points = 32;
  cfg.output_dir = dir_a.string();
  CHECK(run_job(cfg) == kExitOk);
  cfg.output_dir = dir_b.string();
  CHECK(run_job(cfg) == kExitOk);
  for (const char* name : {"mc_validate.csv", "mc_validate_montecarlo.csv"})
    CHECK(slurp(dir_a / name) == slurp(dir_b / name));
  // Summaries differ only through the output_dir echo in the config.
  json a = json::parse(slurp(dir_a / "mc_validate_summary.json"));
  json b = json::parse(slurp(dir_b / "mc_validate_summary.json"));
  a["config"].erase("output_dir");
  b["config"].erase("output_dir");
  CHECK(a == b);
}

TEST_CASE("coherence job distinguishes the inconclusive exit") {
  const fs::path dir = fresh_dir("coherence_inconclusive");
  // Wiener at 6 GHz decorrelates at ~6e-4 s; a 1e-4 s window cannot decide.
  ExperimentConfig cfg = parse_config(
      R"({"job": "coherence", "coherence": {"tau_max_s": 1e-4, "tau_min_s": 1e-8}})");
  cfg.output_dir = dir.string();
  CHECK(run_job(cfg) == kExitInconclusive);
  const json summary = json::parse(slurp(dir / "coherence_summary.json"));
  CHECK(summary.at("coherence").at("kind") == "inconclusive");

  ExperimentConfig ok = parse_config(R"({"job": "coherence"})");
  ok.output_dir = fresh_dir("coherence_ok").string();
  CHECK(run_job(ok) == kExitOk);
}

TEST_CASE("resolved config embeds every default") {
  const ExperimentConfig cfg = parse_config(R"({"job": "figure4"})");
  const json resolved = json::parse(resolved_config_json(cfg));
  CHECK(resolved.at("channel").at("angle_law").at("kind") == "uniform");
  CHECK(resolved.at("channel").at("angle_law").at("high_deg") == 85.0);
  CHECK(resolved.at("ensemble").at("num_realizations") == 100000);
  CHECK(resolved.at("coherence").at("gamma") == 0.5);
}
