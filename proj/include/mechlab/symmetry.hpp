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

// Permutation structure of heterogeneous mechanisms.
//
// A heterogeneous mechanism is symmetric when q_i(v^s) = q_{s(i)}(v) and
// t(v^s) = t(v) for every strict v and permutation s. The symmetric extension
// lifts an identical-domain mechanism on sorted types to all strict types;
// restrict_to_cell goes the other way for one cell. Tied types are skipped by
// every routine here except extend_to_ties.

#ifndef MECHLAB_SYMMETRY_HPP_
#define MECHLAB_SYMMETRY_HPP_

#include <vector>

#include "mechlab/audit.hpp"
#include "mechlab/mechanism.hpp"
#include "mechlab/typespace.hpp"

namespace mechlab {

// Every (v, s) where v^s is missing or an equality fails beyond tol.
AuditReport is_symmetric(const Mechanism& mech, double tol = 0.0);

// Every (v, i, j) with v_i > v_j and q_i(v) < q_j(v) - tol.
AuditReport is_rank_preserving(const Mechanism& mech,
                               double tol = kDefaultAuditTolerance);

// Heterogeneous mechanism on every permutation of the strict sorted types of
// the input: q^s(v) = scatter(q(v^s), s) and t^s(v) = t(v^s) for v in D(s).
// Output types are in lexicographic order.
Mechanism symmetric_extension(const Mechanism& identical);

// Identical-domain mechanism on {v^s : v in D(s)} with q_i = q_{s(i)}(v).
Mechanism restrict_to_cell(const Mechanism& hetero, const Permutation& s);

struct CellExtension {
  Permutation cell;
  double cell_revenue;  // revenue collected on that cell under dist
  Mechanism mechanism;  // symmetric extension of the restriction
};

// Restricts to the cell with the largest revenue under dist (earliest in
// all_permutations order on ties) and extends that back to all strict types.
// Under an exchangeable dist the result earns n! times the cell revenue.
CellExtension best_cell_extension(const Mechanism& hetero, const Distribution& dist);

// Average of the n! relabelled copies q^(v; s)_i = q_{s^-1(i)}(v^s),
// t^(v; s) = t(v^s). Every type must be strict and every orbit complete.
// The average is taken at each sorted representative in the fixed
// all_permutations order and copied to the other orbit members, so the
// output is symmetric exactly.
Mechanism symmetrize(const Mechanism& hetero);

// The relabelled copy (q^(.; s), t^(.; s)).
Mechanism relabel(const Mechanism& hetero, const Permutation& s);

struct Theorem1Certificate {
  AuditReport symmetric;
  AuditReport global_ic;
  AuditReport rank_preserving;
  AuditReport ic_on_identity_cell;
  // Fails iff one of the two implications is contradicted.
  AuditReport certificate;
};

// For a symmetric mechanism: global IC holds iff rank preservation and IC
// among the types of the identity cell hold. Throws if not symmetric.
Theorem1Certificate certify_theorem1(const Mechanism& mech,
                                     double tol = kDefaultAuditTolerance);

// Full heterogeneous grid mechanism: strict types keep their outcome, tied
// types copy the outcome of the nearest strict type in max-norm, the
// lexicographically smallest among the nearest.
Mechanism extend_to_ties(const Mechanism& strict_hetero, const Grid& grid);

// Two objects, t = 0, the lower-valued object allocated for sure: symmetric,
// IC on each cell, not rank preserving and not IC. Strict types only.
Mechanism anti_rank_fixture(const std::vector<TypePoint>& strict_types);

}  // namespace mechlab

#endif  // MECHLAB_SYMMETRY_HPP_
