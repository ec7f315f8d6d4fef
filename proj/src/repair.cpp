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

#include "mechlab/repair.hpp"

#include <algorithm>
#include <cmath>

#include "mechlab/error.hpp"

namespace mechlab {

namespace {

// Slack granted when fixing an earlier coordinate at its maximum.
constexpr double kFixSlack = 1e-11;
// Feasibility slack of the one-dimensional segment search.
constexpr double kSegmentTol = 1e-12;

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double solve_or_throw(LinearProgram& lp, int var) {
  LpSolution sol = solve_lp(lp);
  if (!sol.optimal()) {
    throw Error(std::string("subgradient polytope LP ") + lp_status_name(sol.status));
  }
  return sol.values[var];
}

}  // namespace

SubgradientPolytope::SubgradientPolytope(const Mechanism& mech, std::size_t k)
    : anchor_(mech.type(k)), rank_order_(mech.domain() == Domain::kIdentical) {
  const double u = mech.payoff(anchor_, k);
  for (std::size_t j = 0; j < mech.size(); ++j) {
    if (j == k) continue;
    const TypePoint& w = mech.type(j);
    std::vector<double> d(anchor_.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = w[i] - anchor_[i];
    dirs_.push_back(std::move(d));
    bounds_.push_back(mech.payoff(w, j) - u);
  }
}

bool SubgradientPolytope::contains(std::span<const double> x, double tol) const {
  if (static_cast<int>(x.size()) != n()) return false;
  for (double xi : x) {
    if (xi < -tol || xi > 1.0 + tol) return false;
  }
  if (rank_order_) {
    for (int i = 0; i + 1 < n(); ++i) {
      if (x[i + 1] > x[i] + tol) return false;
    }
  }
  for (std::size_t r = 0; r < dirs_.size(); ++r) {
    if (dot(x, dirs_[r]) > bounds_[r] + tol) return false;
  }
  return true;
}

LinearProgram SubgradientPolytope::to_lp() const {
  LinearProgram lp(true);
  for (int i = 0; i < n(); ++i) lp.add_variable("x" + std::to_string(i + 1), 0.0, 1.0);
  for (std::size_t r = 0; r < dirs_.size(); ++r) {
    std::vector<Term> terms;
    for (int i = 0; i < n(); ++i) {
      if (dirs_[r][i] != 0.0) terms.push_back({i, dirs_[r][i]});
    }
    if (terms.empty()) continue;
    lp.add_constraint(std::move(terms), Sense::kLessEqual, bounds_[r]);
  }
  if (rank_order_) {
    for (int i = 0; i + 1 < n(); ++i) {
      lp.add_constraint({{i + 1, 1.0}, {i, -1.0}}, Sense::kLessEqual, 0.0);
    }
  }
  return lp;
}

double SubgradientPolytope::max_coordinate(int i) const {
  LinearProgram lp = to_lp();
  lp.set_objective(i, 1.0);
  return solve_or_throw(lp, i);
}

double SubgradientPolytope::min_coordinate(int i) const {
  LinearProgram lp = to_lp();
  lp.set_maximize(false);
  lp.set_objective(i, 1.0);
  return solve_or_throw(lp, i);
}

std::vector<double> SubgradientPolytope::lex_max() const {
  LinearProgram lp = to_lp();
  std::vector<double> z(n());
  for (int i = 0; i < n(); ++i) {
    LinearProgram step = lp;
    step.set_objective(i, 1.0);
    z[i] = std::clamp(solve_or_throw(step, i), 0.0, 1.0);
    lp.add_constraint({{i, 1.0}}, Sense::kGreaterEqual, z[i] - kFixSlack);
  }
  return z;
}

std::vector<double> SubgradientPolytope::lex_max_almost_deterministic() const {
  std::vector<double> best;
  for (int k = 0; k < n(); ++k) {
    double lo = 0.0;
    double hi = 1.0;
    for (std::size_t r = 0; r < dirs_.size() && lo <= hi; ++r) {
      double fixed = 0.0;
      for (int j = 0; j < k; ++j) fixed += dirs_[r][j];
      const double room = bounds_[r] + kSegmentTol - fixed;
      const double c = dirs_[r][k];
      if (c > 0.0) {
        hi = std::min(hi, room / c);
      } else if (c < 0.0) {
        lo = std::max(lo, room / c);
      } else if (room < 0.0) {
        hi = -1.0;
      }
    }
    if (lo > hi) continue;
    std::vector<double> x(n(), 0.0);
    for (int j = 0; j < k; ++j) x[j] = 1.0;
    x[k] = hi;
    if (best.empty() || x > best) best = std::move(x);
  }
  return best;
}

RepairResult lmax_repair(const Mechanism& mech, RepairRule rule) {
  if (!check_ic(mech, 1e-8).passed()) {
    throw Error("lmax_repair: input mechanism is not IC");
  }
  const int n = mech.n();
  std::vector<std::vector<double>> q;
  std::vector<double> t;
  std::vector<char> singleton(mech.size(), 0);
  std::vector<double> width(mech.size(), 0.0);
  std::size_t changed = 0;
  for (std::size_t k = 0; k < mech.size(); ++k) {
    const SubgradientPolytope poly(mech, k);
    for (int i = 0; i < n; ++i) {
      width[k] = std::max(width[k], poly.max_coordinate(i) - poly.min_coordinate(i));
    }
    singleton[k] = width[k] <= kSingletonWidth;
    const TypePoint& v = mech.type(k);
    std::vector<double> x;
    if (singleton[k]) {
      x.assign(mech.q(k).begin(), mech.q(k).end());
    } else if (rule == RepairRule::kLexMax) {
      x = poly.lex_max();
    } else {
      x = poly.lex_max_almost_deterministic();
      if (x.empty()) {
        throw Error("lmax_repair: no almost-deterministic sorted subgradient at " +
                    v.to_string());
      }
      for (double& xi : x) xi = std::clamp(xi, 0.0, 1.0);
    }
    const double u = mech.payoff(v, k);
    bool same = true;
    for (int i = 0; i < n; ++i) same = same && x[i] == mech.q(k)[i];
    if (!same) ++changed;
    t.push_back(same ? mech.t(k) : dot(v.values(), x) - u);
    q.push_back(std::move(x));
  }
  return {Mechanism(mech.domain(), mech.types(), std::move(q), std::move(t)),
          std::move(singleton), std::move(width), changed};
}

}  // namespace mechlab
