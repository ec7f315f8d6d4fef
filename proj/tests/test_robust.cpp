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
#include <optional>

#include "doctest.h"
#include "helpers.hpp"
#include "mechlab/error.hpp"
#include "mechlab/optimal.hpp"
#include "mechlab/random.hpp"
#include "mechlab/robust.hpp"

using namespace mechlab;
using namespace mechlab::testing;

namespace {

// Solves the square system m x = rhs; nullopt if singular.
std::optional<std::vector<double>> solve_square(std::vector<std::vector<double>> m,
                                                std::vector<double> rhs) {
  const std::size_t k = rhs.size();
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < k; ++r) {
      if (std::abs(m[r][c]) > std::abs(m[p][c])) p = r;
    }
    if (std::abs(m[p][c]) < 1e-10) return std::nullopt;
    std::swap(m[p], m[c]);
    std::swap(rhs[p], rhs[c]);
    for (std::size_t r = 0; r < k; ++r) {
      if (r == c) continue;
      const double f = m[r][c] / m[c][c];
      for (std::size_t j = c; j < k; ++j) m[r][j] -= f * m[c][j];
      rhs[r] -= f * rhs[c];
    }
  }
  for (std::size_t c = 0; c < k; ++c) rhs[c] /= m[c][c];
  return rhs;
}

// Minimum of sum w t over the marginal polytope by enumerating basic
// solutions: every choice of L types (L = number of levels) whose level-count
// columns form a nonsingular system with nonnegative solution.
double worst_case_oracle(const Mechanism& mech, const MarginalCdf& g) {
  const std::size_t levels = g.size();
  const int n = mech.n();
  std::vector<std::vector<double>> cols;
  for (std::size_t k = 0; k < mech.size(); ++k) {
    std::vector<double> col(levels, 0.0);
    for (int i = 0; i < n; ++i) {
      const auto it = std::find(g.levels().begin(), g.levels().end(), mech.type(k)[i]);
      col[it - g.levels().begin()] += 1.0 / n;
    }
    cols.push_back(col);
  }
  std::vector<double> rhs;
  for (std::size_t x = 0; x < levels; ++x) rhs.push_back(g.pmf(x));
  double best = INFINITY;
  std::vector<std::size_t> pick(levels);
  for (std::size_t i = 0; i < levels; ++i) pick[i] = i;
  while (true) {
    std::vector<std::vector<double>> m(levels, std::vector<double>(levels));
    for (std::size_t r = 0; r < levels; ++r) {
      for (std::size_t c = 0; c < levels; ++c) m[r][c] = cols[pick[c]][r];
    }
    if (auto w = solve_square(m, rhs)) {
      bool ok = true;
      double value = 0.0;
      for (std::size_t c = 0; c < levels; ++c) {
        ok = ok && (*w)[c] >= -1e-12;
        value += (*w)[c] * mech.t(pick[c]);
      }
      if (ok) best = std::min(best, value);
    }
    std::size_t i = levels;
    while (i > 0 && pick[i - 1] == mech.size() - levels + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < levels; ++j) pick[j] = pick[j - 1] + 1;
  }
  return best;
}

}  // namespace

TEST_CASE("optimal_uniform_price examples") {
  const Grid g101 = unit_grid(1, 101);
  const UniformPrice u = optimal_uniform_price(MarginalCdf::UniformOn(g101.levels()), 2);
  CHECK(u.price == doctest::Approx(0.5));
  CHECK(u.per_unit == doctest::Approx(0.5 * 51 / 101));
  CHECK(u.revenue == doctest::Approx(2 * 0.5 * 51 / 101));
  CHECK(std::abs(u.per_unit - 0.25) < 0.01);

  const UniformPrice two =
      optimal_uniform_price(MarginalCdf::FromPmf({0.3, 0.8}, {0.5, 0.5}), 2);
  CHECK(two.price == 0.8);
  CHECK(two.per_unit == doctest::Approx(0.4));
  CHECK(two.revenue == doctest::Approx(0.8));

  const UniformPrice point = optimal_uniform_price(MarginalCdf::FromPmf({0.0, 0.4, 1.0}, {0, 1, 0}), 3);
  CHECK(point.price == 0.4);
  CHECK(point.revenue == doctest::Approx(1.2));

  // 0.5 * 1 vs 1 * 0.5: tie goes to the lower price.
  const UniformPrice tie = optimal_uniform_price(MarginalCdf::FromPmf({0.5, 1.0}, {0.5, 0.5}), 1);
  CHECK(tie.price == 0.5);
}

TEST_CASE("uniform price mechanism") {
  const auto types = enumerate_identical(unit_grid(3, 3), false);
  const Mechanism m = uniform_price_mechanism(types, 0.5);
  CHECK(check_ic(m, 0.0).passed());
  CHECK(check_ir(m, 0.0).passed());
  CHECK(check_feasible_identical(m, 0.0).passed());
  CHECK(m.t(m.index_of({1, 0.5, 0})) == doctest::Approx(1.0));
}

TEST_CASE("worst case of the uniform price is constant") {
  for (int n = 2; n <= 3; ++n) {
    for (const MarginalCdf& g : {MarginalCdf::UniformOn(unit_grid(1, 11).levels()),
                                 MarginalCdf::FromPmf({0.3, 0.8}, {0.5, 0.5}),
                                 MarginalCdf::FromPmf({0.0, 0.5, 1.0}, {0.2, 0.5, 0.3})}) {
      const UniformPrice u = optimal_uniform_price(g, n);
      const auto types = enumerate_identical(Grid::FromLevels(n, g.levels()), false);
      const Mechanism m = uniform_price_mechanism(types, u.price);
      const WorstCase lo = worst_case_revenue(m, g);
      const WorstCase hi = worst_case_revenue(m, g, true);
      CHECK(lo.revenue == doctest::Approx(u.revenue).epsilon(1e-10));
      CHECK(hi.revenue == doctest::Approx(u.revenue).epsilon(1e-10));
      CHECK(expected_revenue(m, comonotone_fmin(g, n)) == doctest::Approx(u.revenue));
    }
  }
}

TEST_CASE("worst case matches basic-solution enumeration") {
  Rng rng(53);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 2;
    const Grid g = unit_grid(n, 3);
    const auto types = enumerate_identical(g, false);
    const Mechanism m = random_ic_mechanism(types, Domain::kIdentical, 1.0, {}, rng);
    std::vector<double> pmf{0.1 + rng.uniform(), 0.1 + rng.uniform(), 0.1 + rng.uniform()};
    const double s = pmf[0] + pmf[1] + pmf[2];
    for (double& p : pmf) p /= s;
    const MarginalCdf gm = MarginalCdf::FromPmf(g.levels(), pmf);
    const WorstCase wc = worst_case_revenue(m, gm);
    CHECK(wc.revenue == doctest::Approx(worst_case_oracle(m, gm)).epsilon(1e-9));
    const MarginalCdf avg = average_marginal(wc.adversary);
    for (std::size_t l = 0; l < 3; ++l) CHECK(avg.pmf(l) == doctest::Approx(pmf[l]));
    CHECK(wc.revenue <= expected_revenue(m, comonotone_fmin(gm, n)) + 1e-9);
  }
}

TEST_CASE("zero payments have zero worst case") {
  const Grid g = unit_grid(2, 4);
  const auto types = enumerate_identical(g, false);
  const Mechanism zero(Domain::kIdentical, types,
                       std::vector<std::vector<double>>(types.size(), {0, 0}),
                       std::vector<double>(types.size(), 0.0));
  CHECK(worst_case_revenue(zero, MarginalCdf::UniformOn(g.levels())).revenue == 0.0);
}

TEST_CASE("worst case input checks") {
  const Grid g = unit_grid(2, 3);
  const auto top = std::vector<TypePoint>{{1, 1}};
  const Mechanism m(Domain::kIdentical, top, {{1, 1}}, {2});
  CHECK_THROWS_AS(worst_case_revenue(m, MarginalCdf::UniformOn(g.levels())), Error);
  const auto het = enumerate_hetero(g, false);
  const Mechanism h(Domain::kHeterogeneous, het,
                    std::vector<std::vector<double>>(het.size(), {0, 0}),
                    std::vector<double>(het.size(), 0.0));
  CHECK_THROWS_AS(worst_case_revenue(h, MarginalCdf::UniformOn(g.levels())), Error);
}

TEST_CASE("comonotone LP optimum is the uniform price guarantee") {
  for (int n = 2; n <= 3; ++n) {
    const MarginalCdf g = MarginalCdf::FromPmf({0.0, 0.5, 1.0}, {0.2, 0.5, 0.3});
    const auto types = enumerate_identical(Grid::FromLevels(n, g.levels()), false);
    const OptimalResult r = optimal_mechanism(types, comonotone_fmin(g, n), Domain::kIdentical);
    CHECK(r.revenue == doctest::Approx(optimal_uniform_price(g, n).revenue).epsilon(1e-9));
  }
}
