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

// Weak majorization and the allocation-shape audits built on it.

#ifndef MECHLAB_MAJORIZATION_HPP_
#define MECHLAB_MAJORIZATION_HPP_

#include <span>
#include <vector>

#include "mechlab/audit.hpp"
#include "mechlab/mechanism.hpp"

namespace mechlab {

inline constexpr double kMajorizationTol = 1e-12;

// Prefix sums of the decreasing rearrangements: a dominates b in every one.
// Throws on length mismatch.
bool weakly_majorizes(std::span<const double> a, std::span<const double> b,
                      double tol = kMajorizationTol);

// q(v^) weakly majorizes q(v) implies t(v^) >= t(v) - tol, over all ordered
// pairs. The mechanism must be IC and either identical-domain or symmetric;
// otherwise Error is thrown. Heterogeneous types are compared through their
// sorted representatives. Each pair also records the IC lower bound
//   t(v^) - t(v) >= sum_k D_k(v) sum_{j<=k} (q_j(v^) - q_j(v)),
// D_k(v) = v_k - v_{k+1} with v_{n+1} = 0, and flags a violation when it
// disagrees with the direct value v.(q(v^) - q(v)).
AuditReport check_prop_schur(const Mechanism& mech, double tol = kDefaultAuditTolerance);

// Along every coordinate line (same v_-i): q_i(v^_i, v_-i) > q_i(v_i, v_-i) + tol
// forces q(v^_i, v_-i) to weakly majorize q(v_i, v_-i).
AuditReport check_majorization_monotonicity(const Mechanism& mech,
                                            double tol = kDefaultAuditTolerance);

// At most one coordinate of each q(v) lies farther than tol from {0, 1}.
AuditReport is_almost_deterministic(const Mechanism& mech, double tol = 1e-6);

// Along every coordinate line: |q_i - q'_i| <= tol forces |q - q'| <= tol.
AuditReport check_object_nonbossy(const Mechanism& mech,
                                  double tol = kDefaultAuditTolerance);

// t(v^) >= t(v) - tol whenever v^ >= v coordinatewise, v^ != v.
AuditReport check_payment_monotone(const Mechanism& mech,
                                   double tol = kDefaultAuditTolerance);

bool is_almost_deterministic_vector(std::span<const double> a, double tol = 0.0);

// Componentwise a >= b, b >= a, or a == b.
bool componentwise_comparable(std::span<const double> a, std::span<const double> b);

// The almost-deterministic vectors of the decreasing cone with the fractional
// coordinate drawn from alphas: (1, ..., 1, alpha, 0, ..., 0).
std::vector<std::vector<double>> sorted_almost_deterministic(int n,
                                                             const std::vector<double>& alphas);

}  // namespace mechlab

#endif  // MECHLAB_MAJORIZATION_HPP_
