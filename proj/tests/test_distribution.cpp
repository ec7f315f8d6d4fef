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
#include "mechlab/random.hpp"
#include "mechlab/symmetry.hpp"

using namespace mechlab;
using mechlab::testing::iid_uniform;
using mechlab::testing::unit_grid;

namespace {

MarginalCdf random_marginal(const std::vector<double>& levels, Rng& rng) {
  std::vector<double> pmf;
  double total = 0.0;
  for (std::size_t l = 0; l < levels.size(); ++l) total += pmf.emplace_back(0.05 + rng.uniform());
  for (double& p : pmf) p /= total;
  return MarginalCdf::FromPmf(levels, pmf);
}

bool weakly_above(const TypePoint& a, const TypePoint& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("MarginalCdf") {
  const MarginalCdf g = MarginalCdf::FromPmf({0.0, 0.5, 1.0}, {0.2, 0.3, 0.5});
  CHECK(g.cdf()[0] == doctest::Approx(0.2));
  CHECK(g.cdf()[2] == 1.0);
  CHECK(g.pmf(1) == doctest::Approx(0.3));
  CHECK(g.mass_at_or_above(0) == doctest::Approx(1.0));
  CHECK(g.mass_at_or_above(2) == doctest::Approx(0.5));
  CHECK_THROWS_AS(MarginalCdf::FromPmf({0.0, 1.0}, {0.4, 0.4}), Error);
  CHECK_THROWS_AS(MarginalCdf({0.0, 1.0}, {0.7, 0.5}), Error);
  CHECK_THROWS_AS(MarginalCdf::FromPmf({1.0, 0.0}, {0.5, 0.5}), Error);
}

TEST_CASE("iid two-point weights") {
  const Distribution d = iid_distribution(MarginalCdf::FromPmf({0.0, 1.0}, {0.3, 0.7}), 2);
  CHECK(d.weight_of({0, 0}) == doctest::Approx(0.09));
  CHECK(d.weight_of({0, 1}) == doctest::Approx(0.21));
  CHECK(d.weight_of({1, 0}) == doctest::Approx(0.21));
  CHECK(d.weight_of({1, 1}) == doctest::Approx(0.49));
  CHECK(d.weight_of({0.5, 0.5}) == 0.0);
  CHECK(is_exchangeable(d, 1e-15).passed());
}

TEST_CASE("Distribution validation") {
  const std::vector<double> lv{0.0, 1.0};
  CHECK_THROWS_AS(Distribution(Domain::kHeterogeneous, lv, {{0, 1}, {1, 0}}, {0.5, 0.6}), Error);
  CHECK_THROWS_AS(Distribution(Domain::kHeterogeneous, lv, {{0, 1}, {0, 1}}, {0.5, 0.5}), Error);
  CHECK_THROWS_AS(Distribution(Domain::kHeterogeneous, lv, {{0, 1}, {1, 0}}, {1.5, -0.5}), Error);
  CHECK_THROWS_AS(Distribution(Domain::kIdentical, lv, {{0, 1}}, {1.0}), Error);
  CHECK_THROWS_AS(Distribution(Domain::kHeterogeneous, lv, {{0, 0.5}}, {1.0}), Error);
  const Distribution n = Distribution::Normalized(Domain::kHeterogeneous, lv, {{0, 1}, {1, 0}}, {1, 3});
  CHECK(n.weight_of({1, 0}) == doctest::Approx(0.75));
}

TEST_CASE("exchangeability") {
  const std::vector<double> lv{0.0, 1.0};
  const Distribution skew =
      Distribution(Domain::kHeterogeneous, lv, {{0, 1}, {1, 0}}, {0.25, 0.75});
  const AuditReport r = is_exchangeable(skew, 1e-12);
  CHECK_FALSE(r.passed());
  CHECK(r.max_violation() == doctest::Approx(0.5));
  CHECK(is_exchangeable(skew, 0.6).passed());

  Rng rng(3);
  const Grid g = unit_grid(3, 3);
  const MarginalCdf g0 = random_marginal(g.levels(), rng);
  const Distribution iid = iid_distribution(g0, 3);
  CHECK(is_exchangeable(iid, 1e-14).passed());
  CHECK(is_exchangeable(mixture({iid, iid_uniform(g)}, {0.3, 0.7}), 1e-14).passed());
  const Distribution het = iid_distribution(random_marginal(g.levels(), rng), 3);
  std::vector<double> w;
  for (const TypePoint& v : het.types()) w.push_back(het.weight_of(v) * (1.0 + v[0]));
  CHECK_FALSE(is_exchangeable(Distribution::Normalized(Domain::kHeterogeneous, g.levels(),
                                                       het.types(), w),
                              1e-12)
                  .passed());
}

TEST_CASE("restrict_to_strict") {
  const Distribution s = restrict_to_strict(iid_uniform(unit_grid(2, 3)));
  CHECK(s.size() == 6);
  for (double w : s.weights()) CHECK(w == doctest::Approx(1.0 / 6));
  CHECK_THROWS_AS(restrict_to_strict(Distribution(Domain::kHeterogeneous, {0.0, 1.0},
                                                  {{1, 1}}, {1.0})),
                  Error);
}

TEST_CASE("to_identical_density") {
  const Grid g = unit_grid(2, 3);
  const Distribution id = to_identical_density(restrict_to_strict(iid_uniform(g)));
  CHECK(id.domain() == Domain::kIdentical);
  CHECK(id.size() == 3);
  for (const TypePoint& v : id.types()) {
    CHECK(v.is_strict());
    CHECK(v[0] > v[1]);
    CHECK(id.weight_of(v) == doctest::Approx(1.0 / 3));
  }
  CHECK_THROWS_AS(to_identical_density(iid_uniform(g)), Error);
  CHECK_THROWS_AS(to_identical_density(Distribution(Domain::kHeterogeneous, {0.0, 1.0},
                                                    {{0, 1}, {1, 0}}, {0.25, 0.75})),
                  Error);

  // Weight n! f(v) at every sorted strict type.
  Rng rng(5);
  const Grid g3 = unit_grid(3, 5);
  const Distribution h = restrict_to_strict(iid_distribution(random_marginal(g3.levels(), rng), 3));
  const Distribution f = to_identical_density(h);
  for (const TypePoint& v : f.types()) CHECK(f.weight_of(v) == doctest::Approx(6.0 * h.weight_of(v)));
}

TEST_CASE("marginals") {
  Rng rng(7);
  const Grid g = unit_grid(2, 4);
  const MarginalCdf a = random_marginal(g.levels(), rng);
  const MarginalCdf b = random_marginal(g.levels(), rng);
  std::vector<TypePoint> types = enumerate_hetero(g, false);
  std::vector<double> w;
  for (const TypePoint& v : types) {
    w.push_back(a.pmf(static_cast<std::size_t>(v[0] * 3 + 0.5)) *
                b.pmf(static_cast<std::size_t>(v[1] * 3 + 0.5)));
  }
  const Distribution d(Domain::kHeterogeneous, g.levels(), types, w);
  const auto ms = marginals(d);
  REQUIRE(ms.size() == 2);
  for (std::size_t l = 0; l < 4; ++l) {
    CHECK(ms[0].pmf(l) == doctest::Approx(a.pmf(l)));
    CHECK(ms[1].pmf(l) == doctest::Approx(b.pmf(l)));
    CHECK(average_marginal(d).pmf(l) == doctest::Approx((a.pmf(l) + b.pmf(l)) / 2));
  }
}

TEST_CASE("comonotone_fmin") {
  const MarginalCdf g = MarginalCdf::FromPmf({0.0, 0.5, 1.0}, {0.2, 0.3, 0.5});
  const Distribution c = comonotone_fmin(g, 3);
  CHECK(c.domain() == Domain::kIdentical);
  CHECK(c.size() == 3);
  CHECK(c.weight_of({0.5, 0.5, 0.5}) == doctest::Approx(0.3));
  for (const MarginalCdf& m : marginals(c)) {
    for (std::size_t l = 0; l < 3; ++l) CHECK(m.pmf(l) == doctest::Approx(g.pmf(l)));
  }
}

TEST_CASE("mixture") {
  const Grid g = unit_grid(2, 2);
  const Distribution a(Domain::kHeterogeneous, g.levels(), {{0, 0}}, {1.0});
  const Distribution b(Domain::kHeterogeneous, g.levels(), {{1, 1}}, {1.0});
  const Distribution m = mixture({a, b}, {0.25, 0.75});
  CHECK(m.weight_of({0, 0}) == doctest::Approx(0.25));
  CHECK(m.weight_of({1, 1}) == doctest::Approx(0.75));
  CHECK_THROWS_AS(mixture({a, b}, {0.5, 0.6}), Error);
}

TEST_CASE("fosd_shift dominates on every upper set") {
  Rng rng(11);
  const Grid g = unit_grid(2, 3);
  const auto box = enumerate_hetero(g, false);
  REQUIRE(box.size() == 9);
  std::vector<unsigned> upper_sets;
  for (unsigned mask = 0; mask < (1u << box.size()); ++mask) {
    bool closed = true;
    for (std::size_t a = 0; a < box.size() && closed; ++a) {
      if (!(mask >> a & 1u)) continue;
      for (std::size_t b = 0; b < box.size() && closed; ++b) {
        if (weakly_above(box[b], box[a]) && !(mask >> b & 1u)) closed = false;
      }
    }
    if (closed) upper_sets.push_back(mask);
  }
  CHECK(upper_sets.size() == 20);

  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> w;
    for (std::size_t k = 0; k < box.size(); ++k) w.push_back(rng.uniform());
    const Distribution d = Distribution::Normalized(Domain::kHeterogeneous, g.levels(), box, w);
    ShiftMap shift;
    for (int i = 0; i < 2; ++i) {
      std::vector<int> map(3);
      for (int l = 0; l < 3; ++l) {
        const int prev = l == 0 ? 0 : map[l - 1];
        map[l] = std::max({l, prev, static_cast<int>(rng.index(3))});
      }
      shift.per_coordinate.push_back(map);
    }
    const Distribution s = fosd_shift(d, shift);
    for (unsigned mask : upper_sets) {
      double before = 0.0;
      double after = 0.0;
      for (std::size_t k = 0; k < box.size(); ++k) {
        if (!(mask >> k & 1u)) continue;
        before += d.weight_of(box[k]);
        after += s.weight_of(box[k]);
      }
      CHECK(after >= before - 1e-14);
    }
  }

  const Distribution one = fosd_shift(iid_uniform(g), ShiftMap::OneStepUp(3, 2));
  CHECK(one.weight_of({1, 1}) == doctest::Approx(4.0 / 9));
  CHECK(one.weight_of({0, 0}) == 0.0);
  ShiftMap bad;
  bad.per_coordinate = {{1, 0, 2}, {0, 1, 2}};
  CHECK_THROWS_AS(fosd_shift(iid_uniform(g), bad), Error);
  bad.per_coordinate = {{0, 0, 2}, {0, 1, 2}};
  CHECK_THROWS_AS(fosd_shift(iid_uniform(g), bad), Error);
}

TEST_CASE("density check") {
  const Grid g = unit_grid(2, 3);
  CHECK(check_mcafee_mcmillan(density_on_box({"uniform"}, g), g, 1e-12).passed());
  CHECK(check_mcafee_mcmillan(density_on_box({"exp_rate_a", 1.0}, g), g, 1e-12).passed());
  const AuditReport bad = check_mcafee_mcmillan(density_on_box({"exp_rate_a", 10.0}, g), g, 1e-12);
  CHECK_FALSE(bad.passed());
  bool interior = false;
  for (const Violation& v : bad.violations()) interior |= v.witnesses[0] == TypePoint{0.5, 0.5};
  CHECK(interior);
  // Oracle at (0.5, 0.5): 3 f + sum_i v_i (f(v + h e_i) - f(v - h e_i)) / 2h.
  const double f = std::exp(-10.0);
  const double expr = 3 * f + 2 * 0.5 * (std::exp(-15.0) - std::exp(-5.0)) / 1.0;
  for (const Violation& v : bad.violations()) {
    if (v.witnesses[0] == TypePoint{0.5, 0.5}) CHECK(v.slack == doctest::Approx(-expr));
  }
  CHECK_THROWS_AS(check_mcafee_mcmillan(density_on_box({"uniform"}, unit_grid(2, 2)),
                                        unit_grid(2, 2), 1e-12),
                  Error);
  CHECK_THROWS_AS(evaluate_density({"nope"}, g, {0, 0}), Error);
}

TEST_CASE("density_distribution") {
  const Grid g = unit_grid(2, 4);
  const Distribution d = density_distribution({"exp_rate_a", 2.0}, g, Domain::kIdentical, true);
  CHECK(d.size() == 6);
  const double ratio = d.weight_of({1, 0}) / d.weight_of({1.0 / 3, 0});
  CHECK(ratio == doctest::Approx(std::exp(-4.0 / 3)));
  const Distribution b =
      density_distribution({"beta_ab", 2.0, 2.0}, g, Domain::kHeterogeneous, false);
  CHECK(b.weight_of({0, 1.0 / 3}) == 0.0);
  CHECK(is_exchangeable(b, 1e-14).passed());
}
