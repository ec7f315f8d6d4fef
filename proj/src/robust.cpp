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

#include "mechlab/robust.hpp"

#include <algorithm>

#include "mechlab/error.hpp"

namespace mechlab {

UniformPrice optimal_uniform_price(const MarginalCdf& g_avg, int n) {
  if (n < 1) throw Error("optimal_uniform_price: n must be positive");
  UniformPrice best;
  bool first = true;
  for (std::size_t i = 0; i < g_avg.size(); ++i) {
    const double p = g_avg.levels()[i];
    const double r = p * g_avg.mass_at_or_above(i);
    if (first || r > best.per_unit) {
      best = {p, i, r, 0.0};
      first = false;
    }
  }
  best.revenue = n * best.per_unit;
  return best;
}

Mechanism uniform_price_mechanism(const std::vector<TypePoint>& types, double p) {
  std::vector<std::vector<double>> q;
  std::vector<double> t;
  for (const TypePoint& v : types) {
    std::vector<double> a(v.size(), 0.0);
    int sold = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] >= p) {
        a[i] = 1.0;
        ++sold;
      }
    }
    q.push_back(std::move(a));
    t.push_back(p * sold);
  }
  return Mechanism(Domain::kIdentical, types, std::move(q), std::move(t));
}

LinearProgram worst_case_lp(const Mechanism& identical, const MarginalCdf& g_avg,
                            bool maximize) {
  if (identical.domain() != Domain::kIdentical) {
    throw Error("worst_case_revenue: identical domain required");
  }
  const auto& levels = g_avg.levels();
  const int n = identical.n();
  LinearProgram lp(maximize);
  std::vector<std::vector<Term>> level_rows(levels.size());
  std::vector<Term> total;
  for (std::size_t k = 0; k < identical.size(); ++k) {
    const TypePoint& v = identical.type(k);
    const int var = lp.add_variable("w" + std::to_string(k), 0.0, kInf, identical.t(k));
    total.push_back({var, 1.0});
    std::vector<int> count(levels.size(), 0);
    for (int i = 0; i < n; ++i) {
      auto it = std::lower_bound(levels.begin(), levels.end(), v[i]);
      if (it == levels.end() || *it != v[i]) {
        throw Error("worst_case_revenue: type " + v.to_string() +
                    " has a coordinate off the marginal's levels");
      }
      ++count[it - levels.begin()];
    }
    for (std::size_t x = 0; x < levels.size(); ++x) {
      if (count[x] > 0) level_rows[x].push_back({var, count[x] / static_cast<double>(n)});
    }
  }
  lp.add_constraint(std::move(total), Sense::kEqual, 1.0, "total");
  for (std::size_t x = 0; x < levels.size(); ++x) {
    lp.add_constraint(std::move(level_rows[x]), Sense::kEqual, g_avg.pmf(x),
                      "marginal" + std::to_string(x));
  }
  return lp;
}

WorstCase worst_case_revenue(const Mechanism& identical, const MarginalCdf& g_avg,
                             bool maximize) {
  const LinearProgram lp = worst_case_lp(identical, g_avg, maximize);
  LpSolution sol = solve_lp(lp);
  if (sol.status == LpStatus::kInfeasible) {
    throw Error("worst_case_revenue: average marginal not achievable by any "
                "identical-domain joint on the mechanism's types");
  }
  if (!sol.optimal()) {
    throw Error(std::string("worst_case_revenue: LP ") + lp_status_name(sol.status));
  }
  std::vector<double> w(identical.size());
  for (std::size_t k = 0; k < w.size(); ++k) w[k] = std::max(0.0, sol.values[k]);
  Distribution adversary = Distribution::Normalized(
      Domain::kIdentical, g_avg.levels(), identical.types(), std::move(w));
  const double rev = expected_revenue(identical, adversary);
  return {rev, std::move(adversary), std::move(sol)};
}

}  // namespace mechlab
