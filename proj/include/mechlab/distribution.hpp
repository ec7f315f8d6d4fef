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

// Probability weights over grid types.

#ifndef MECHLAB_DISTRIBUTION_HPP_
#define MECHLAB_DISTRIBUTION_HPP_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mechlab/audit.hpp"
#include "mechlab/typespace.hpp"

namespace mechlab {

// Cumulative distribution over an increasing list of levels.
class MarginalCdf {
 public:
  MarginalCdf(std::vector<double> levels, std::vector<double> cdf);
  static MarginalCdf FromPmf(std::vector<double> levels,
                             const std::vector<double>& pmf);
  static MarginalCdf UniformOn(std::vector<double> levels);

  const std::vector<double>& levels() const { return levels_; }
  const std::vector<double>& cdf() const { return cdf_; }
  std::size_t size() const { return levels_.size(); }
  // Mass at levels[i].
  double pmf(std::size_t i) const;
  // Mass of values >= levels[i], i.e. 1 - G evaluated at the left limit.
  double mass_at_or_above(std::size_t i) const;

 private:
  std::vector<double> levels_;
  std::vector<double> cdf_;
};

class Distribution {
 public:
  // Weights must be nonnegative and sum to 1 within 1e-12. Types must be
  // distinct, of dimension n, with coordinates drawn from levels; identical
  // domain types must be weakly decreasing.
  Distribution(Domain domain, std::vector<double> levels,
               std::vector<TypePoint> types, std::vector<double> weights);
  // Same, after scaling the weights to sum to 1.
  static Distribution Normalized(Domain domain, std::vector<double> levels,
                                 std::vector<TypePoint> types,
                                 std::vector<double> weights);

  Domain domain() const { return domain_; }
  int n() const { return n_; }
  const std::vector<double>& levels() const { return levels_; }
  const std::vector<TypePoint>& types() const { return types_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return types_.size(); }

  // Weight at v, zero for types outside the support list.
  double weight_of(const TypePoint& v) const;
  std::optional<std::size_t> find(const TypePoint& v) const;

 private:
  Domain domain_;
  int n_;
  std::vector<double> levels_;
  std::vector<TypePoint> types_;
  std::vector<double> weights_;
  std::map<TypePoint, std::size_t> index_;
};

// Product of n copies of the marginal on the heterogeneous grid.
Distribution iid_distribution(const MarginalCdf& marginal, int n);

// Convex combination of distributions sharing domain, n and levels.
Distribution mixture(const std::vector<Distribution>& parts,
                     const std::vector<double>& mix);

// Conditions on strict types: drops tied types and renormalizes.
Distribution restrict_to_strict(const Distribution& dist);

// Reports every (v, s) with |f(v) - f(v^s)| > tol.
AuditReport is_exchangeable(const Distribution& dist, double tol);

// Identical-domain density on strictly decreasing types with weight n! f(v).
// Throws if dist is not exchangeable within tol or has mass on tied types.
Distribution to_identical_density(const Distribution& dist, double tol = 1e-12);

std::vector<MarginalCdf> marginals(const Distribution& dist);
MarginalCdf average_marginal(const Distribution& dist);

// Diagonal joint whose marginals all equal g_avg: mass g_avg.pmf(x) at
// (x, ..., x). Identical domain.
Distribution comonotone_fmin(const MarginalCdf& g_avg, int n);

// Coordinatewise level maps, as index maps on the level list. Each map must
// be nondecreasing with map[i] >= i.
struct ShiftMap {
  std::vector<std::vector<int>> per_coordinate;

  // The same map on every coordinate (keeps exchangeability).
  static ShiftMap Same(std::vector<int> map, int n);
  // Every level moves up one grid step, the top level stays.
  static ShiftMap OneStepUp(std::size_t num_levels, int n);
};

// Pushforward of dist under the map. The result dominates dist in the
// multivariate first-order order through the monotone coupling v -> map(v).
Distribution fosd_shift(const Distribution& dist, const ShiftMap& shift);

// Evaluates 3 f(v) + v . grad f(v) at every point of the box grid (density
// given in enumerate_hetero order). Central differences at interior levels,
// one-sided at the boundary, step = adjacent level spacing.
AuditReport check_mcafee_mcmillan(std::span<const double> density,
                                  const Grid& grid, double tol);

// Named densities on the box: "uniform", "exp_rate_a" (f ~ exp(-a sum v)),
// "beta_ab" (product of Beta(a, b) on the rescaled coordinates).
struct DensitySpec {
  std::string name = "uniform";
  double a = 1.0;
  double b = 1.0;
};

double evaluate_density(const DensitySpec& spec, const Grid& grid,
                        const TypePoint& v);
std::vector<double> density_on_box(const DensitySpec& spec, const Grid& grid);

// Weights proportional to the density at the domain's grid points.
Distribution density_distribution(const DensitySpec& spec, const Grid& grid,
                                  Domain domain, bool strict_only);

}  // namespace mechlab

#endif  // MECHLAB_DISTRIBUTION_HPP_
