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

// Subgradient selection that keeps the buyer's utility and removes bossiness.
//
// For an IC mechanism with utility u, the allocation at v may be replaced by
// any x in
//   P(v) = { x in [0,1]^n : u(v') - u(v) >= x.(v' - v) for all types v' },
// intersected with x_1 >= ... >= x_n on the identical domain, without
// breaking IC. The lexicographically largest point of every P(v) gives an
// object non-bossy mechanism with the same u.

#ifndef MECHLAB_REPAIR_HPP_
#define MECHLAB_REPAIR_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "mechlab/linear_program.hpp"
#include "mechlab/mechanism.hpp"

namespace mechlab {

class SubgradientPolytope {
 public:
  // P(v) at type index k of mech; rank order added for the identical domain.
  SubgradientPolytope(const Mechanism& mech, std::size_t k);

  const TypePoint& anchor() const { return anchor_; }
  int n() const { return static_cast<int>(anchor_.size()); }
  bool rank_order() const { return rank_order_; }
  // Rows x . directions[r] <= bounds[r].
  const std::vector<std::vector<double>>& directions() const { return dirs_; }
  const std::vector<double>& bounds() const { return bounds_; }

  bool contains(std::span<const double> x, double tol = 1e-10) const;
  // Box, subgradient rows and rank order as an LP in x (objective zero).
  LinearProgram to_lp() const;
  // Largest and smallest x_i over the polytope.
  double max_coordinate(int i) const;
  double min_coordinate(int i) const;
  // Lexicographically maximal point, solving n LPs in coordinate order.
  std::vector<double> lex_max() const;
  // Lexicographically maximal point of the form (1,...,1, alpha, 0,...,0),
  // or empty if the polytope holds none.
  std::vector<double> lex_max_almost_deterministic() const;

 private:
  TypePoint anchor_;
  bool rank_order_;
  std::vector<std::vector<double>> dirs_;
  std::vector<double> bounds_;
};

enum class RepairRule {
  kLexMax,                     // over the whole polytope
  kAlmostDeterministicLexMax,  // over its almost-deterministic sorted points
};

struct RepairResult {
  Mechanism mechanism;
  std::vector<char> singleton;  // per type: polytope width <= kSingletonWidth
  std::vector<double> width;    // per type: max_i (max x_i - min x_i)
  std::size_t changed = 0;      // types whose allocation moved
};

inline constexpr double kSingletonWidth = 1e-10;

// Input must be IC (checked at 1e-8). Singleton types keep their outcome;
// every other type gets the rule's lexicographic maximum and the payment
// v.q - u(v).
RepairResult lmax_repair(const Mechanism& mech, RepairRule rule = RepairRule::kLexMax);

}  // namespace mechlab

#endif  // MECHLAB_REPAIR_HPP_
