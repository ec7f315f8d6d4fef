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


// Experiment configuration: a JSON document holding one experiment object
// or {"experiments": [...]}.
//
//   {
//     "name": "solve_n1",                       optional, defaults to kind + index
//     "kind": "solve",                          see ExperimentKind
//     "domain": "identical",                    or "heterogeneous"
//     "grid": {"n": 1, "v_low": 0, "v_high": 1, "points": 3},
//                                               or {"n": 2, "levels": [...]}
//     "strict_only": false,
//     "distribution": {"kind": "iid", "marginal": {"pmf": [...]}},
//     "tolerance": 1e-8,
//     "seed": 0,
//     "options": {...}                          kind-specific, see below
//   }
//
// Distribution kinds:
//   iid           "marginal": {"pmf": [...]} over the levels (uniform when absent)
//   table         "types": [[...], ...], "weights": [...] (normalized)
//   density_expr  "expr": uniform | exp_rate_a | beta_ab, with "a", "b"
//   comonotone    "marginal": the diagonal joint with that average marginal
//   mixture       "parts": [distribution, ...], "mix": [...]
// For heterogeneous experiments the distribution lives on the heterogeneous
// grid; for identical ones on the sorted grid (iid is sorted by folding mass
// onto decreasing representatives).

#ifndef MECHLAB_CONFIG_HPP_
#define MECHLAB_CONFIG_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "mechlab/distribution.hpp"
#include "mechlab/typespace.hpp"

namespace mechlab {

// Parse or validation failure; what() names the line or the field path.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ExperimentKind {
  kSolve,
  kCertifyEquivalence,
  kCertifyTheorem1,
  kRobust,
  kMonotonicity,
  kRepair,
  kDeterministic,
};

const char* experiment_kind_name(ExperimentKind k);

struct DistributionSpec {
  std::string type = "iid";  // the "kind" field
  std::vector<double> pmf;   // iid, comonotone; empty = uniform
  std::vector<TypePoint> types;
  std::vector<double> weights;
  DensitySpec density;
  std::vector<DistributionSpec> parts;
  std::vector<double> mix;
};

// Kind-specific knobs. Only the keys listed per kind are accepted:
//   solve                symmetric, ic_mode, support_reduction
//   certify_equivalence  solve_full_hetero
//   certify_theorem1     source (optimal | random | anti_rank), items
//   robust               (none)
//   monotonicity         source (optimal | uniform_price | random), items
//   repair               source (optimal | random), rule (lex_max |
//                        almost_deterministic), items, coarse
//   deterministic        compare_lp
struct ExperimentOptions {
  bool symmetric = false;
  std::string ic_mode = "auto";
  bool support_reduction = true;
  bool solve_full_hetero = true;
  std::string source = "optimal";
  int items = 6;
  bool coarse = false;
  std::string rule = "lex_max";
  bool compare_lp = true;
};

struct ExperimentConfig {
  std::string name;
  ExperimentKind kind = ExperimentKind::kSolve;
  Domain domain = Domain::kIdentical;
  int n = 1;
  std::vector<double> levels;
  double v_low = 0.0;
  double v_high = 1.0;
  bool strict_only = false;
  DistributionSpec distribution;
  double tolerance = 1e-8;
  std::uint64_t seed = 0;
  ExperimentOptions options;

  Grid grid() const;
  std::vector<TypePoint> types() const;
  Distribution build_distribution() const;
};

// Experiments in document order. Throws ConfigError.
std::vector<ExperimentConfig> parse_config(const std::string& text);
std::vector<ExperimentConfig> load_config(const std::string& path);

}  // namespace mechlab

#endif  // MECHLAB_CONFIG_HPP_
