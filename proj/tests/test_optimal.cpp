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


#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "mechlab/error.hpp"
#include "mechlab/majorization.hpp"
#include "mechlab/optimal.hpp"
#include "mechlab/random.hpp"
#include "mechlab/symmetry.hpp"
#include "oracles.hpp"

using namespace mechlab;
using namespace mechlab::testing;

namespace {

double posted_price_oracle(const std::vector<double>& levels, const std::vector<double>& pmf) {
  double best = 0.0;
  for (std::size_t p = 0; p < levels.size(); ++p) {
    double above = 0.0;
    for (std::size_t l = p; l < levels.size(); ++l) above += pmf[l];
    best = std::max(best, levels[p] * above);
  }
  return best;
}

void expect_valid(const OptimalResult& r, double tol = 1e-8) {
  CHECK(check_ic(r.mechanism, tol).passed());
  CHECK(check_ir(r.mechanism, tol).passed());
  if (r.mechanism.domain() == Domain::kIdentical) {
    CHECK(check_feasible_identical(r.mechanism, tol).passed());
  }
  CHECK(r.lp.duality_gap <= 1e-7);
  CHECK(r.lp.primal_violation <= 1e-9);
}

}  // namespace

TEST_CASE("single buyer, three levels") {
  const Grid g = unit_grid(1, 3);
  const auto types = enumerate_hetero(g, false);
  const OptimalResult r =
      optimal_mechanism(types, uniform_on(Domain::kHeterogeneous, g, types), Domain::kHeterogeneous);
  CHECK(r.revenue == doctest::Approx(1.0 / 3).epsilon(1e-12));
  expect_valid(r);
}

TEST_CASE("single buyer matches the posted-price oracle") {
  Rng rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    const int m = 3 + static_cast<int>(rng.index(10));
    const Grid g = unit_grid(1, m);
    std::vector<double> pmf;
    double total = 0.0;
    for (int l = 0; l < m; ++l) total += pmf.emplace_back(rng.uniform());
    for (double& p : pmf) p /= total;
    const Distribution d = iid_distribution(MarginalCdf::FromPmf(g.levels(), pmf), 1);
    const OptimalResult r = optimal_mechanism(enumerate_hetero(g, false), d, Domain::kHeterogeneous);
    CHECK(r.revenue == doctest::Approx(posted_price_oracle(g.levels(), pmf)).epsilon(1e-9));
    expect_valid(r);
  }
}

TEST_CASE("point masses extract full surplus") {
  const Grid g1 = unit_grid(1, 3);
  const Distribution top(Domain::kHeterogeneous, g1.levels(), {{1.0}}, {1.0});
  CHECK(optimal_mechanism(enumerate_hetero(g1, false), top, Domain::kHeterogeneous).revenue ==
        doctest::Approx(1.0));

  const Grid g2 = unit_grid(2, 3);
  const Distribution both(Domain::kIdentical, g2.levels(), {{1, 1}}, {1.0});
  const auto sorted = enumerate_identical(g2, false);
  const OptimalResult r = optimal_mechanism(sorted, both, Domain::kIdentical);
  CHECK(r.revenue == doctest::Approx(2.0));
  CHECK(r.mechanism.size() == sorted.size());
  expect_valid(r);
  const OptimalResult full = optimal_mechanism(sorted, both, Domain::kIdentical,
                                               {.support_reduction = false});
  CHECK(full.revenue == doctest::Approx(2.0));

  const auto strict = enumerate_hetero(g2, true);
  const Distribution orbit(Domain::kHeterogeneous, g2.levels(), {{1, 0.5}, {0.5, 1}}, {0.5, 0.5});
  const OptimalResult s = optimal_symmetric_mechanism(strict, orbit);
  CHECK(s.revenue == doctest::Approx(1.5));
  CHECK(is_symmetric(s.mechanism, 0.0).passed());
}

TEST_CASE("two buyers, two levels, against allocation enumeration") {
  const Grid g = Grid::FromLevels(2, {1.0, 2.0});
  const auto types = enumerate_hetero(g, false);
  for (double p : {0.2, 0.5, 0.7}) {
    const Distribution d = iid_distribution(MarginalCdf::FromPmf(g.levels(), {p, 1 - p}), 2);
    const OptimalResult r = optimal_mechanism(types, d, Domain::kHeterogeneous);
    expect_valid(r);
    std::vector<double> w;
    for (const TypePoint& v : types) w.push_back(d.weight_of(v));
    const double oracle =
        best_over_allocations(types, w, product_grid({0.0, 0.5, 1.0}, 2), any_allocation);
    CHECK(r.revenue >= oracle - 1e-9);
    CHECK(r.revenue == doctest::Approx(oracle).epsilon(1e-9));
  }
}

TEST_CASE("identical domain LP against allocation enumeration") {
  const Grid g = unit_grid(2, 3);
  const auto sorted = enumerate_identical(g, false);
  Rng rng(41);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> w;
    for (std::size_t k = 0; k < sorted.size(); ++k) w.push_back(0.1 + rng.uniform());
    const Distribution d = Distribution::Normalized(Domain::kIdentical, g.levels(), sorted, w);
    const OptimalResult r = optimal_mechanism(sorted, d, Domain::kIdentical);
    expect_valid(r);
    const double oracle = best_over_allocations(sorted, d.weights(),
                                                product_grid({0.0, 0.5, 1.0}, 2), sorted_allocation);
    CHECK(r.revenue >= oracle - 1e-9);
  }
}

TEST_CASE("symmetric optimum equals full optimum under exchangeable priors") {
  Rng rng(43);
  for (int m = 3; m <= 5; ++m) {
    const Grid g = unit_grid(2, m);
    const auto strict = enumerate_hetero(g, true);
    std::vector<double> pmf;
    double total = 0.0;
    for (int l = 0; l < m; ++l) total += pmf.emplace_back(0.2 + rng.uniform());
    for (double& p : pmf) p /= total;
    const Distribution d =
        restrict_to_strict(iid_distribution(MarginalCdf::FromPmf(g.levels(), pmf), 2));
    const OptimalResult full = optimal_mechanism(strict, d, Domain::kHeterogeneous);
    const OptimalResult sym = optimal_symmetric_mechanism(strict, d);
    CHECK(std::abs(full.revenue - sym.revenue) <= 1e-7);
    CHECK(is_symmetric(sym.mechanism, 0.0).passed());
    expect_valid(full);
    expect_valid(sym);
    const Mechanism s = symmetrize(full.mechanism);
    CHECK(is_symmetric(s, 0.0).passed());
    CHECK(std::abs(expected_revenue(s, d) - full.revenue) <= 1e-9);
  }
  CHECK_THROWS_AS(optimal_symmetric_mechanism(enumerate_hetero(unit_grid(2, 3), false),
                                              iid_uniform(unit_grid(2, 3))),
                  Error);
}

TEST_CASE("constraint generation and support reduction leave the optimum unchanged") {
  Rng rng(47);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 2 + trial % 2;
    const Grid g = unit_grid(n, n == 2 ? 6 : 4);
    const auto sorted = enumerate_identical(g, false);
    std::vector<double> w;
    for (std::size_t k = 0; k < sorted.size(); ++k) w.push_back(rng.uniform() < 0.3 ? 0.0 : rng.uniform());
    w[0] += 0.1;
    const Distribution d = Distribution::Normalized(Domain::kIdentical, g.levels(), sorted, w);
    const OptimalResult full = optimal_mechanism(sorted, d, Domain::kIdentical,
                                                 {.ic_mode = IcMode::kFull, .support_reduction = false});
    const OptimalResult gen = optimal_mechanism(sorted, d, Domain::kIdentical,
                                                {.ic_mode = IcMode::kGenerated, .support_reduction = false});
    const OptimalResult red = optimal_mechanism(sorted, d, Domain::kIdentical);
    CHECK(gen.revenue == doctest::Approx(full.revenue).epsilon(1e-9));
    CHECK(red.revenue == doctest::Approx(full.revenue).epsilon(1e-9));
    CHECK(red.support_reduced);
    CHECK(gen.rounds >= 1);
    CHECK(gen.ic_rows <= full.ic_rows);
    expect_valid(full);
    expect_valid(gen);
    expect_valid(red);
  }
}

TEST_CASE("optimal_mechanism input checks") {
  const Grid g = unit_grid(2, 3);
  const auto strict = enumerate_hetero(g, true);
  CHECK_THROWS_AS(optimal_mechanism(strict, iid_uniform(g), Domain::kHeterogeneous), Error);
  CHECK_THROWS_AS(optimal_mechanism(enumerate_identical(g, false), iid_uniform(g), Domain::kIdentical),
                  Error);
}

TEST_CASE("repeated solves are identical") {
  const Grid g = unit_grid(2, 5);
  const auto sorted = enumerate_identical(g, true);
  const Distribution d = to_identical_density(restrict_to_strict(iid_uniform(g)));
  const OptimalResult a = optimal_mechanism(sorted, d, Domain::kIdentical);
  const OptimalResult b = optimal_mechanism(sorted, d, Domain::kIdentical);
  CHECK(a.lp.values == b.lp.values);
  CHECK(a.revenue == b.revenue);
}

TEST_CASE("mechanism_lp exports the full program") {
  const Grid g = unit_grid(2, 3);
  const auto sorted = enumerate_identical(g, false);
  const LinearProgram lp =
      mechanism_lp(sorted, uniform_on(Domain::kIdentical, g, sorted), Domain::kIdentical, false);
  CHECK(lp.num_variables() == sorted.size() * 3);
  const LpSolution s = solve_lp(lp);
  REQUIRE(s.optimal());
  const OptimalResult r =
      optimal_mechanism(sorted, uniform_on(Domain::kIdentical, g, sorted), Domain::kIdentical);
  CHECK(s.objective == doctest::Approx(r.revenue));
}
