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

// Uniform pricing and revenue guarantees over all identical-domain joints
// with a given average marginal.

#ifndef MECHLAB_ROBUST_HPP_
#define MECHLAB_ROBUST_HPP_

#include <cstddef>
#include <vector>

#include "mechlab/distribution.hpp"
#include "mechlab/linear_program.hpp"
#include "mechlab/mechanism.hpp"

namespace mechlab {

struct UniformPrice {
  double price = 0.0;
  std::size_t level = 0;         // index of price in the level list
  double per_unit = 0.0;         // p * (mass of values >= p)
  double revenue = 0.0;          // n * per_unit
};

// Maximizes p * (mass at or above p) over the levels of g_avg; ties go to
// the lower price.
UniformPrice optimal_uniform_price(const MarginalCdf& g_avg, int n);

// Every unit valued at or above p is sold at p: q_i = [v_i >= p],
// t = p * #{i : v_i >= p}. Identical domain, on the given sorted types.
Mechanism uniform_price_mechanism(const std::vector<TypePoint>& types, double p);

struct WorstCase {
  double revenue = 0.0;
  Distribution adversary;   // minimizer (or maximizer) of expected payment
  LpSolution lp;
};

// Minimizes (or, with maximize, maximizes) sum w(v) t(v) over weights on the
// mechanism's types with sum 1 and (1/n) sum_v w(v) #{i : v_i = x} equal to
// the mass of g_avg at x for every level x. Throws when no identical-domain
// joint on these types has average marginal g_avg.
WorstCase worst_case_revenue(const Mechanism& identical, const MarginalCdf& g_avg,
                             bool maximize = false);

// The transportation-style program solved by worst_case_revenue, for export.
LinearProgram worst_case_lp(const Mechanism& identical, const MarginalCdf& g_avg,
                            bool maximize);

}  // namespace mechlab

#endif  // MECHLAB_ROBUST_HPP_
