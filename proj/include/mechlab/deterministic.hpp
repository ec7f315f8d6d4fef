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

// Exhaustive search for revenue-optimal deterministic mechanisms.
//
// A deterministic mechanism is a menu of bundles a in {0,1}^n with prices.
// Each bundle (prefix bundles only in the identical domain) is either left
// off the menu or priced at a value v.a of some type v. Any other price can
// be raised to the next such value without losing a buyer, so this finite
// search reaches the optimum. Buyers pick a payoff-maximizing item and, among
// those, the most expensive one.

#ifndef MECHLAB_DETERMINISTIC_HPP_
#define MECHLAB_DETERMINISTIC_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "mechlab/distribution.hpp"
#include "mechlab/mechanism.hpp"
#include "mechlab/symmetry.hpp"

namespace mechlab {

struct DeterministicOptions {
  // Throws "instance too large" when menus x types exceeds this.
  double max_work = 1e9;
  // Revenue ties within this are all reported as optimal.
  double tie_tol = 1e-12;
  std::size_t max_optima = 4096;
};

struct DeterministicResult {
  Mechanism mechanism;                 // first optimum in search order
  double revenue = 0.0;
  std::vector<Mechanism> optima;       // distinct optimal mechanisms
  bool optima_truncated = false;       // more ties than max_optima
  std::size_t menus_searched = 0;
  double menu_space = 0.0;             // (prices + 1)^bundles; equals menus_searched
  std::vector<std::vector<double>> bundles;
  std::vector<double> candidate_prices;
};

DeterministicResult optimal_deterministic(const std::vector<TypePoint>& types,
                                          const Distribution& dist, Domain domain,
                                          const DeterministicOptions& opt = {});

struct SymmetricDeterministicCertificate {
  std::size_t symmetric_optima = 0;
  std::size_t rank_preserving_optima = 0;
  // From the first rank-preserving optimum: best cell, symmetric extension.
  std::optional<CellExtension> constructed;
  std::optional<double> constructed_revenue;
  AuditReport audit;
};

// Heterogeneous optima under an exchangeable dist. Asserts that every
// symmetric optimum is rank preserving and that the best-cell extension of
// a rank-preserving optimum is a deterministic symmetric IC/IR mechanism
// earning at least the optimum, so one kind exists iff the other does.
SymmetricDeterministicCertificate certify_symmetric_deterministic(
    const DeterministicResult& result, const Distribution& dist, double tol = 1e-9);

// Bundles searched for the domain: all nonzero 0/1 vectors, or the prefix
// vectors (1,...,1,0,...,0) for the identical domain.
std::vector<std::vector<double>> deterministic_bundles(int n, Domain domain);

}  // namespace mechlab

#endif  // MECHLAB_DETERMINISTIC_HPP_
