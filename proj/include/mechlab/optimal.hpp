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

// Revenue-optimal mechanisms by linear programming.
//
// Variables per type are q(v) and the utility u(v) >= 0 (IR); the payment is
// recovered as t(v) = v.q(v) - u(v). Incentive constraints read
//   u(v') - u(v) + (v - v').q(v') <= 0   for every deviation v -> v'.
// In the symmetric variant one block of variables is kept per permutation
// orbit, at its sorted representative s, with q(s^(s^-1)) = scatter(q(s), s).

#ifndef MECHLAB_OPTIMAL_HPP_
#define MECHLAB_OPTIMAL_HPP_

#include <cstddef>
#include <vector>

#include "mechlab/distribution.hpp"
#include "mechlab/linear_program.hpp"
#include "mechlab/mechanism.hpp"
#include "mechlab/typespace.hpp"

namespace mechlab {

enum class IcMode {
  kAuto,       // kGenerated for 12+ levels or more than kMaxFullIcRows rows
  kFull,       // every ordered pair
  kGenerated,  // grid neighbours first, then violated pairs until none remain
};

inline constexpr std::size_t kMaxFullIcRows = 20000;

struct OptimalOptions {
  IcMode ic_mode = IcMode::kAuto;
  // Solve on the positive-weight types only and give every other type its
  // favourite outcome among those. Exact: both problems have the same value.
  bool support_reduction = true;
  // Violations above this trigger another generation round.
  double generation_tol = 1e-10;
  std::size_t cuts_per_type = 4;
  SimplexOptions simplex;
};

struct OptimalResult {
  Mechanism mechanism;
  double revenue = 0.0;        // expected_revenue of the returned mechanism
  double lp_objective = 0.0;   // value of the final LP
  LpSolution lp;               // final LP solution
  std::size_t ic_rows = 0;     // incentive rows in the final LP
  std::size_t rounds = 1;      // LP solves
  bool support_reduced = false;
};

// Maximizes expected revenue over IC, IR (and, for the identical domain,
// q_1 >= ... >= q_n) mechanisms on types. Throws if the LP is not solved to
// optimality or a positive-weight type of dist is not in types.
OptimalResult optimal_mechanism(const std::vector<TypePoint>& types,
                                const Distribution& dist, Domain domain,
                                const OptimalOptions& opt = {});

// Same over symmetric heterogeneous mechanisms on strict types closed under
// permutation.
OptimalResult optimal_symmetric_mechanism(const std::vector<TypePoint>& types,
                                          const Distribution& dist,
                                          const OptimalOptions& opt = {});

// The full-IC program solved by the functions above (no generation, no
// support reduction), for export.
LinearProgram mechanism_lp(const std::vector<TypePoint>& types,
                           const Distribution& dist, Domain domain,
                           bool symmetric);

}  // namespace mechlab

#endif  // MECHLAB_OPTIMAL_HPP_
