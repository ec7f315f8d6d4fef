// Copyright 2026 The mechlab Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// mechlab run <config> [--out DIR] [--tol X] [--seed N]
// mechlab export-lp <config> [--experiment NAME] [--out FILE]

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "mechlab/config.hpp"
#include "mechlab/linear_program.hpp"
#include "mechlab/runner.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kRuntimeError = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal and robust mechanism experiments on finite type grids"};
  app.require_subcommand(1);

  std::string config_path;
  mechlab::RunOptions run_opt;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  CLI::App* run = app.add_subcommand("run", "Run the experiments of a config file");
  run->add_option("config", config_path, "Experiment config (JSON)")->required();
  run->add_option("--out", run_opt.out_dir, "Output directory")->capture_default_str();
  run->add_option("--tol", tol, "Override every experiment's tolerance");
  run->add_option("--seed", seed, "Override every experiment's seed");

  std::string lp_config;
  std::string lp_name;
  std::string lp_out;
  CLI::App* exp = app.add_subcommand("export-lp", "Write the LP behind an experiment");
  exp->add_option("config", lp_config, "Experiment config (JSON)")->required();
  exp->add_option("--experiment", lp_name, "Experiment name (default: the first)");
  exp->add_option("--out", lp_out, "Output file (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const auto configs = mechlab::load_config(config_path);
      run_opt.tolerance = tol;
      run_opt.seed = seed;
      const int status = mechlab::run_all(configs, run_opt);
      std::cout << (status == 0 ? "PASS" : "FAIL") << ": " << configs.size()
                << " experiment(s), reports in " << run_opt.out_dir << "\n";
      return status;
    }
    const auto configs = mechlab::load_config(lp_config);
    const mechlab::ExperimentConfig* chosen = &configs.front();
    if (!lp_name.empty()) {
      chosen = nullptr;
      for (const auto& c : configs) {
        if (c.name == lp_name) chosen = &c;
      }
      if (!chosen) throw mechlab::ConfigError("no experiment named '" + lp_name + "'");
    }
    const std::string text = mechlab::to_lp_format(mechlab::experiment_lp(*chosen));
    if (lp_out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(lp_out);
      f << text;
      if (!f) throw std::runtime_error("cannot write '" + lp_out + "'");
    }
    return 0;
  } catch (const mechlab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
}
