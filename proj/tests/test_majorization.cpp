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
#include "mechlab/error.hpp"
#include "mechlab/majorization.hpp"
#include "mechlab/optimal.hpp"
#include "mechlab/random.hpp"
#include "mechlab/robust.hpp"
#include "mechlab/symmetry.hpp"

using namespace mechlab;
using namespace mechlab::testing;

namespace {

using Vec = std::vector<double>;

Mechanism two_type(Domain d, std::vector<TypePoint> types, std::vector<Vec> q, Vec t) {
  return Mechanism(d, std::move(types), std::move(q), std::move(t));
}

std::size_t ordered_pairs(const Mechanism& m) { return m.size() * (m.size() - 1); }

}  // namespace

TEST_CASE("weakly_majorizes") {
  CHECK(weakly_majorizes(Vec{1, 0.5}, Vec{0.5, 0.5}));
  CHECK_FALSE(weakly_majorizes(Vec{0.5, 0.5}, Vec{1, 0.5}));
  CHECK_FALSE(weakly_majorizes(Vec{0.6, 0.6}, Vec{1.0, 0.0}));
  CHECK(weakly_majorizes(Vec{0.2, 0.9, 0.4}, Vec{0.9, 0.4, 0.2}));
  CHECK(weakly_majorizes(Vec{0.9, 0.4, 0.2}, Vec{0.2, 0.9, 0.4}));
  CHECK(weakly_majorizes(Vec{0.5}, Vec{0.5}));
  CHECK_THROWS_AS(weakly_majorizes(Vec{1}, Vec{1, 0}), Error);
}

TEST_CASE("almost-deterministic sorted vectors are totally ordered") {
  const Vec alphas{0.0, 0.125, 0.25, 1.0 / 3, 0.5, 0.75, 0.9, 1.0};
  for (int n = 1; n <= 4; ++n) {
    const auto vs = sorted_almost_deterministic(n, alphas);
    CHECK(vs.size() == static_cast<std::size_t>(n * (alphas.size() - 1) + 1));
    for (const Vec& a : vs) {
      CHECK(is_almost_deterministic_vector(a));
      for (const Vec& b : vs) CHECK(componentwise_comparable(a, b));
    }
  }
  CHECK_FALSE(componentwise_comparable(Vec{1, 0}, Vec{0.5, 0.5}));
}

TEST_CASE("is_almost_deterministic") {
  CHECK(is_almost_deterministic(two_type(Domain::kIdentical, {{1, 0.5, 0}}, {{1, 0.4, 0}}, {0.5}))
            .passed());
  CHECK(is_almost_deterministic(two_type(Domain::kIdentical, {{1, 0.5}}, {{1, 0}}, {1})).passed());
  const AuditReport bad = is_almost_deterministic(two_type(Domain::kIdentical, {{1, 0.5}}, {{0.6, 0.4}}, {0.5}));
  CHECK_FALSE(bad.passed());
  CHECK(bad.max_violation() == doctest::Approx(0.4));
}

TEST_CASE("majorization monotonicity") {
  // Coordinate 1 rises from (0.5, 0.5) to (0.9, 0): partial sums (0.9, 0.9) vs (0.5, 1.0).
  const Mechanism bad = two_type(Domain::kIdentical, {{0.5, 0.25}, {1.0, 0.25}},
                                 {{0.5, 0.5}, {0.9, 0.0}}, {0.3, 0.5});
  const AuditReport r = check_majorization_monotonicity(bad);
  CHECK_FALSE(r.passed());
  CHECK(r.violations()[0].witnesses[0] == TypePoint{1.0, 0.25});
  const Mechanism fine = two_type(Domain::kIdentical, {{0.5, 0.25}, {1.0, 0.25}},
                                  {{0.9, 0.0}, {1.0, 0.0}}, {0.3, 0.5});
  CHECK(check_majorization_monotonicity(fine).passed());
  Rng rng(61);
  const auto single = enumerate_identical(unit_grid(1, 6), false);
  CHECK(check_majorization_monotonicity(random_ic_mechanism(single, Domain::kIdentical, 1.0, {}, rng))
            .passed());
}

TEST_CASE("almost deterministic IC mechanisms are majorization monotone") {
  Rng rng(67);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 2;
    const auto types = enumerate_identical(unit_grid(n, 5), false);
    RandomMenuOptions opt;
    opt.almost_deterministic = true;
    opt.items = 3 + static_cast<int>(rng.index(6));
    const Mechanism m = random_ic_mechanism(types, Domain::kIdentical, 1.0, opt, rng);
    REQUIRE(is_almost_deterministic(m, 0.0).passed());
    CHECK(check_majorization_monotonicity(m).passed());
  }
}

TEST_CASE("object non-bossiness") {
  const Mechanism bossy = two_type(Domain::kIdentical, {{0.5, 0.1}, {0.9, 0.1}},
                                   {{1, 0}, {1, 0.3}}, {0.5, 0.52});
  const AuditReport r = check_object_nonbossy(bossy);
  CHECK_FALSE(r.passed());
  CHECK(r.max_violation() == doctest::Approx(0.3));
  const auto types = enumerate_identical(unit_grid(3, 4), false);
  CHECK(check_object_nonbossy(uniform_price_mechanism(types, 2.0 / 3)).passed());
}

TEST_CASE("payment monotone") {
  const auto types = enumerate_identical(unit_grid(2, 4), false);
  CHECK(check_payment_monotone(uniform_price_mechanism(types, 1.0 / 3)).passed());
  const Mechanism down = two_type(Domain::kIdentical, {{0.5, 0.5}, {1, 0.5}}, {{0, 0}, {0, 0}}, {0.2, 0.1});
  CHECK_FALSE(check_payment_monotone(down).passed());
}

TEST_CASE("prop_schur examples") {
  const auto types = enumerate_identical(unit_grid(2, 5), false);
  CHECK(check_prop_schur(uniform_price_mechanism(types, 0.5)).passed());
  const Mechanism constant(Domain::kIdentical, types, std::vector<Vec>(types.size(), {0.5, 0.5}),
                           Vec(types.size(), 0.2));
  const AuditReport c = check_prop_schur(constant);
  CHECK(c.passed());
  CHECK(c.checked() == ordered_pairs(constant));

  const Grid g = unit_grid(2, 5);
  const auto sorted = enumerate_identical(g, true);
  const OptimalResult r = optimal_mechanism(
      sorted, to_identical_density(restrict_to_strict(iid_uniform(g))), Domain::kIdentical);
  CHECK(check_prop_schur(r.mechanism, 1e-9).passed());

  const Mechanism not_ic = two_type(Domain::kIdentical, {{0.5, 0}, {1, 0}}, {{1, 0}, {0, 0}}, {0, 0});
  CHECK_THROWS_AS(check_prop_schur(not_ic), Error);
  const auto strict = enumerate_hetero(unit_grid(2, 3), true);
  Vec t(strict.size(), 0.0);
  std::vector<Vec> q(strict.size(), Vec{1, 0});
  CHECK_THROWS_AS(check_prop_schur(Mechanism(Domain::kHeterogeneous, strict, q, t)), Error);
}

TEST_CASE("prop_schur on fuzzed IC mechanisms") {
  Rng rng(71);
  std::size_t pairs = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const int n = 2 + trial % 2;
    const Grid g = unit_grid(n, n == 2 ? 6 : 4);
    RandomMenuOptions opt;
    opt.almost_deterministic = trial % 3 == 0;
    opt.coarse = trial % 5 == 0;
    if (trial % 4 == 1) {
      const auto strict = enumerate_hetero(g, true);
      const Mechanism s = symmetrize(random_ic_mechanism(strict, Domain::kHeterogeneous, 1.0, opt, rng));
      const AuditReport r = check_prop_schur(s, 1e-9);
      CHECK(r.passed());
      pairs += r.checked();
      continue;
    }
    const auto types = enumerate_identical(g, false);
    const AuditReport r =
        check_prop_schur(random_ic_mechanism(types, Domain::kIdentical, 1.0, opt, rng), 1e-9);
    CHECK(r.passed());
    pairs += r.checked();
  }
  CHECK(pairs >= 10000);
}
