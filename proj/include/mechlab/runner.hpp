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


// Runs parsed experiments and writes their reports.
//
// One experiment writes summary.json, audits.json, mechanism.csv and
// distribution.csv into the output directory. Several experiments write one
// summary.json and audits.json holding every experiment, plus the two CSV
// dumps under a subdirectory per experiment name. JSON keys are sorted and
// numbers rounded to 12 significant digits, so equal inputs give equal bytes.

#ifndef MECHLAB_RUNNER_HPP_
#define MECHLAB_RUNNER_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mechlab/audit.hpp"
#include "mechlab/config.hpp"
#include "mechlab/distribution.hpp"
#include "mechlab/linear_program.hpp"
#include "mechlab/mechanism.hpp"

namespace mechlab {

struct CheckOutcome {
  AuditReport report;
  bool asserted = true;  // counts toward the exit status
};

struct ExperimentOutcome {
  std::string name;
  ExperimentKind kind = ExperimentKind::kSolve;
  nlohmann::json results = nlohmann::json::object();
  std::vector<CheckOutcome> checks;
  std::optional<Mechanism> mechanism;
  std::optional<Distribution> distribution;
  std::string error;  // nonempty when the run threw
  std::optional<LinearProgram> failed_lp;

  bool passed() const;
};

// Never throws for solver or audit failures; those land in error.
ExperimentOutcome run_experiment(const ExperimentConfig& config);

// The program behind an experiment, in LP text format: the mechanism design
// LP, or the worst-case program for robust runs.
LinearProgram experiment_lp(const ExperimentConfig& config);

struct RunOptions {
  std::string out_dir = "out";
  std::optional<double> tolerance;
  std::optional<std::uint64_t> seed;
};

// Applies the overrides, runs everything and writes the reports. Returns 0
// iff every asserted check passed and no run failed; 1 otherwise.
int run_all(std::vector<ExperimentConfig> configs, const RunOptions& opt);

// Report document for the outcomes (summary.json content).
nlohmann::json summary_json(const std::vector<ExperimentOutcome>& outcomes);
nlohmann::json audits_json(const std::vector<ExperimentOutcome>& outcomes);

// Copies j with every floating value rounded to 12 significant digits.
nlohmann::json rounded(const nlohmann::json& j);

}  // namespace mechlab

#endif  // MECHLAB_RUNNER_HPP_
