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


// Revenue comparison of one mechanism under a distribution and its upward
// shift, with the comparison asserted only where a sufficient condition for
// revenue monotonicity is verified on the grid.

#ifndef MECHLAB_EXPERIMENT_HPP_
#define MECHLAB_EXPERIMENT_HPP_

#include <optional>
#include <string>

#include "mechlab/audit.hpp"
#include "mechlab/distribution.hpp"
#include "mechlab/mechanism.hpp"

namespace mechlab {

enum class MonotonicityBasis {
  kAlmostDeterministic,      // IC, almost deterministic, and symmetric if heterogeneous
  kMajorizationAfterRepair,  // L-maximal repair is majorization monotone
  kNone,                     // reported only
};

const char* monotonicity_basis_name(MonotonicityBasis b);

struct MonotonicityResult {
  double revenue_before = 0.0;
  double revenue_after = 0.0;
  // Set whenever the repair was attempted.
  std::optional<double> repaired_before;
  std::optional<double> repaired_after;
  MonotonicityBasis basis = MonotonicityBasis::kNone;
  bool original_asserted = false;
  bool repaired_asserted = false;
  AuditReport audit;
};

// Input must be IC and IR at 1e-8 (Error otherwise). The shifted
// distribution must be supported on the mechanism's types.
//
// Almost deterministic input: asserts its revenue rises. Otherwise, on the
// identical domain or for symmetric heterogeneous input, the mechanism is
// L-maximally repaired; if the repair is majorization monotone its revenue
// is asserted to rise, and the original's too when both distributions live
// on singleton-polytope types. Everything else is recorded as notes.
MonotonicityResult run_revenue_monotonicity_experiment(const Mechanism& mech,
                                                       const Distribution& dist,
                                                       const ShiftMap& shift,
                                                       double tol = 1e-9);

}  // namespace mechlab

#endif  // MECHLAB_EXPERIMENT_HPP_
