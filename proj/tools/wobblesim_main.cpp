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

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "wobblesim/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"UAV pitch-wobble channel coherence simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool quick = false;

  const std::vector<std::string> jobs = {"acf",     "coherence",   "figure2", "figure3",
                                         "figure4", "mc-validate", "mus"};
  const std::vector<std::string> descriptions = {
      "emit the analytic ACF curve for the configured process",
      "coherence time for the configured process and threshold",
      "ACF curves for Wiener and sinusoidal wobble at 6 GHz",
      "sinusoidal ACF sweep over 2.4/6/30 GHz carriers",
      "sinusoidal ACF sweep over 5/7/10 deg max pitch at 2.4 GHz",
      "Monte Carlo vs analytic ACF cross-validation",
      "distributed-MIMO autocorrelation matrix and decorrelation check"};

  for (std::size_t i = 0; i < jobs.size(); ++i) {
    CLI::App* sub = app.add_subcommand(jobs[i], descriptions[i]);
    sub->add_option("--config", config_path, "JSON config file");
    sub->add_option("--out", out_dir, "output directory (overrides config and env)");
    sub->add_option("--seed", seed, "master seed override")->each([&](const std::string&) {
      seed_set = true;
    });
    sub->add_flag("--quick", quick, "reduced Monte Carlo effort (1e4 realizations)");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    wobblesim::ExperimentConfig cfg;
    if (!config_path.empty()) cfg = wobblesim::load_config_file(config_path);
    cfg.job = app.get_subcommands().front()->get_name();
    if (seed_set) cfg.master_seed = seed;
    if (quick) cfg.quick = true;
    if (const char* env = std::getenv("WOBBLESIM_OUTPUT_DIR")) cfg.output_dir = env;
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    return wobblesim::run_job(cfg);
  } catch (const wobblesim::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return wobblesim::kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return wobblesim::kExitFailure;
  }
}
