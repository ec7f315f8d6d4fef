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

// Numerical certificate that the identical-objects model with density
// n! f and the heterogeneous model with exchangeable f have the same optimal
// revenue, with optima mapping into each other.

#ifndef MECHLAB_EQUIVALENCE_HPP_
#define MECHLAB_EQUIVALENCE_HPP_

#include <optional>

#include "mechlab/audit.hpp"
#include "mechlab/distribution.hpp"
#include "mechlab/mechanism.hpp"
#include "mechlab/optimal.hpp"

namespace mechlab {

struct EquivalenceOptions {
  double revenue_tol = 1e-7;
  double audit_tol = 1e-8;
  // Also solve the unrestricted heterogeneous LP.
  bool solve_full_hetero = false;
  OptimalOptions lp;
};

struct EquivalenceCertificate {
  double revenue_identical = 0.0;
  double revenue_symmetric = 0.0;
  std::optional<double> revenue_hetero_full;
  Mechanism identical_optimum;
  Mechanism symmetric_optimum;
  // symmetric_extension(identical_optimum) and
  // restrict_to_cell(symmetric_optimum, identity).
  Mechanism extended;
  Mechanism restricted;
  AuditReport audit;  // all assertions folded together
};

// hetero must be an exchangeable distribution on the strict heterogeneous
// types of grid. Throws if it is not (via to_identical_density).
EquivalenceCertificate certify_equivalence(const Grid& grid, const Distribution& hetero,
                                           const EquivalenceOptions& opt = {});

}  // namespace mechlab

#endif  // MECHLAB_EQUIVALENCE_HPP_
