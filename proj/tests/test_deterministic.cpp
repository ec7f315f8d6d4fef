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


#include "doctest.h"
#include "helpers.hpp"
#include "mechlab/deterministic.hpp"
#include "mechlab/error.hpp"
#include "mechlab/optimal.hpp"
#include "mechlab/random.hpp"
#include "oracles.hpp"

using namespace mechlab;
using namespace mechlab::testing;

TEST_CASE("deterministic_bundles") {
  CHECK(deterministic_bundles(2, Domain::kHeterogeneous).size() == 3);
  CHECK(deterministic_bundles(3, Domain::kHeterogeneous).size() == 7);
  const auto prefix = deterministic_bundles(3, Domain::kIdentical);
  REQUIRE(prefix.size() == 3);
  for (const auto& a : prefix) CHECK(std::is_sorted(a.rbegin(), a.rend()));
}

TEST_CASE("single buyer is the best posted price") {
  const Grid g = unit_grid(1, 5);
  const auto types = enumerate_hetero(g, false);
  const Distribution d =
      iid_distribution(MarginalCdf::FromPmf(g.levels(), {0.1, 0.3, 0.2, 0.25, 0.15}), 1);
  const DeterministicResult r = optimal_deterministic(types, d, Domain::kHeterogeneous);
  double best = 0.0;
  for (std::size_t p = 0; p < 5; ++p) {
    double above = 0.0;
    for (std::size_t l = p; l < 5; ++l) above += d.weights()[l];
    best = std::max(best, g.levels()[p] * above);
  }
  CHECK(r.revenue == doctest::Approx(best));
  CHECK(r.revenue == doctest::Approx(optimal_mechanism(types, d, Domain::kHeterogeneous).revenue));
}

TEST_CASE("mass at the top sells the grand bundle at 2") {
  const Grid g = unit_grid(2, 3);
  const Distribution top(Domain::kHeterogeneous, g.levels(), {{1, 1}}, {1.0});
  const DeterministicResult r =
      optimal_deterministic(enumerate_hetero(g, false), top, Domain::kHeterogeneous);
  CHECK(r.revenue == doctest::Approx(2.0));
  const std::size_t k = r.mechanism.index_of({1, 1});
  CHECK(r.mechanism.q(k)[0] == 1.0);
  CHECK(r.mechanism.q(k)[1] == 1.0);
  CHECK(r.mechanism.t(k) == doctest::Approx(2.0));
}

TEST_CASE("deterministic optimum matches allocation enumeration") {
  Rng rng(59);
  for (Domain dom : {Domain::kHeterogeneous, Domain::kIdentical}) {
    for (int trial = 0; trial < 4; ++trial) {
      const Grid g = unit_grid(2, 3);
      const auto types = dom == Domain::kIdentical ? enumerate_identical(g, false)
                                                   : enumerate_hetero(g, false);
      std::vector<double> w;
      for (std::size_t k = 0; k < types.size(); ++k) w.push_back(0.05 + rng.uniform());
      const Distribution d = Distribution::Normalized(dom, g.levels(), types, w);
      const DeterministicResult r = optimal_deterministic(types, d, dom);
      const double oracle = best_over_allocations(
          types, d.weights(), product_grid({0.0, 1.0}, 2),
          dom == Domain::kIdentical ? sorted_allocation : any_allocation);
      CHECK(r.revenue == doctest::Approx(oracle).epsilon(1e-12));
      CHECK(check_ic(r.mechanism, 1e-12).passed());
      CHECK(check_ir(r.mechanism, 1e-12).passed());
      CHECK(r.revenue <= optimal_mechanism(types, d, dom).revenue + 1e-9);
      for (const Mechanism& m : r.optima) CHECK(expected_revenue(m, d) == doctest::Approx(r.revenue));
    }
  }
}

TEST_CASE("deterministic revenue never exceeds the LP on uniform levels") {
  const Grid g = unit_grid(2, 3);
  const auto types = enumerate_hetero(g, false);
  const DeterministicResult r = optimal_deterministic(types, iid_uniform(g), Domain::kHeterogeneous);
  const double lp = optimal_mechanism(types, iid_uniform(g), Domain::kHeterogeneous).revenue;
  CHECK(r.revenue <= lp + 1e-9);
  CHECK(r.menus_searched > 0);
}

TEST_CASE("too large instances throw") {
  const Grid g = unit_grid(3, 4);
  CHECK_THROWS_AS(optimal_deterministic(enumerate_hetero(g, false), iid_uniform(g),
                                        Domain::kHeterogeneous, {.max_work = 1e3}),
                  Error);
  const Grid g4 = unit_grid(4, 2);
  CHECK_THROWS_AS(optimal_deterministic(enumerate_hetero(g4, false), iid_uniform(g4),
                                        Domain::kHeterogeneous),
                  Error);
}
