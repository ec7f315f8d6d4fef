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

#include "mechlab/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "mechlab/error.hpp"

namespace mechlab {

namespace {

constexpr double kMassTolerance = 1e-12;

int level_index(const std::vector<double>& levels, double x) {
  auto it = std::lower_bound(levels.begin(), levels.end(), x);
  if (it == levels.end() || *it != x) return -1;
  return static_cast<int>(it - levels.begin());
}

}  // namespace

MarginalCdf::MarginalCdf(std::vector<double> levels, std::vector<double> cdf)
    : levels_(std::move(levels)), cdf_(std::move(cdf)) {
  if (levels_.empty() || levels_.size() != cdf_.size()) {
    throw Error("marginal: levels and cdf must be nonempty and equal length");
  }
  for (std::size_t i = 0; i < cdf_.size(); ++i) {
    if (i > 0 && !(levels_[i] > levels_[i - 1])) {
      throw Error("marginal: levels must be strictly increasing");
    }
    if (!(cdf_[i] >= 0.0) || cdf_[i] > 1.0 + kMassTolerance) {
      throw Error("marginal: cdf values must lie in [0, 1]");
    }
    if (i > 0 && cdf_[i] < cdf_[i - 1]) {
      throw Error("marginal: cdf must be nondecreasing");
    }
  }
  if (std::fabs(cdf_.back() - 1.0) > kMassTolerance) {
    throw Error("marginal: cdf must end at 1");
  }
  cdf_.back() = 1.0;
}

MarginalCdf MarginalCdf::FromPmf(std::vector<double> levels,
                                 const std::vector<double>& pmf) {
  if (levels.size() != pmf.size()) {
    throw Error("marginal: levels and pmf must have equal length");
  }
  double total = 0.0;
  for (double p : pmf) {
    if (!(p >= 0.0)) throw Error("marginal: negative probability mass");
    total += p;
  }
  if (std::fabs(total - 1.0) > 1e-9) {
    throw Error("marginal: pmf must sum to 1");
  }
  std::vector<double> cdf(pmf.size());
  double running = 0.0;
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    running += pmf[i] / total;
    cdf[i] = std::min(running, 1.0);
  }
  cdf.back() = 1.0;
  return MarginalCdf(std::move(levels), std::move(cdf));
}

MarginalCdf MarginalCdf::UniformOn(std::vector<double> levels) {
  const std::size_t m = levels.size();
  std::vector<double> cdf(m);
  for (std::size_t i = 0; i < m; ++i) {
    cdf[i] = static_cast<double>(i + 1) / static_cast<double>(m);
  }
  return MarginalCdf(std::move(levels), std::move(cdf));
}

double MarginalCdf::pmf(std::size_t i) const {
  return i == 0 ? cdf_[0] : cdf_[i] - cdf_[i - 1];
}

double MarginalCdf::mass_at_or_above(std::size_t i) const {
  return i == 0 ? 1.0 : 1.0 - cdf_[i - 1];
}

Distribution::Distribution(Domain domain, std::vector<double> levels,
                           std::vector<TypePoint> types,
                           std::vector<double> weights)
    : domain_(domain),
      n_(types.empty() ? 0 : static_cast<int>(types.front().size())),
      levels_(std::move(levels)),
      types_(std::move(types)),
      weights_(std::move(weights)) {
  if (types_.empty()) throw Error("distribution: empty type list");
  if (types_.size() != weights_.size()) {
    throw Error("distribution: types and weights differ in length");
  }
  double total = 0.0;
  for (std::size_t k = 0; k < types_.size(); ++k) {
    const TypePoint& v = types_[k];
    if (static_cast<int>(v.size()) != n_) {
      throw Error("distribution: inconsistent type dimension");
    }
    for (double x : v.v) {
      if (level_index(levels_, x) < 0) {
        throw Error("distribution: coordinate off the level grid in " +
                    v.to_string());
      }
    }
    if (domain_ == Domain::kIdentical && !v.is_sorted_decreasing()) {
      throw Error("distribution: identical-domain type not decreasing " +
                  v.to_string());
    }
    if (!(weights_[k] >= 0.0) || !std::isfinite(weights_[k])) {
      throw Error("distribution: weights must be finite and nonnegative");
    }
    total += weights_[k];
    if (!index_.emplace(v, k).second) {
      throw Error("distribution: duplicate type " + v.to_string());
    }
  }
  if (std::fabs(total - 1.0) > kMassTolerance) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "distribution: weights sum to %.17g",
                  total);
    throw Error(buf);
  }
}

Distribution Distribution::Normalized(Domain domain, std::vector<double> levels,
                                      std::vector<TypePoint> types,
                                      std::vector<double> weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  if (!(total > 0.0)) throw Error("distribution: total mass must be positive");
  for (double& w : weights) w /= total;
  return Distribution(domain, std::move(levels), std::move(types),
                      std::move(weights));
}

double Distribution::weight_of(const TypePoint& v) const {
  auto it = index_.find(v);
  return it == index_.end() ? 0.0 : weights_[it->second];
}

std::optional<std::size_t> Distribution::find(const TypePoint& v) const {
  auto it = index_.find(v);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Distribution iid_distribution(const MarginalCdf& marginal, int n) {
  const Grid grid = Grid::FromLevels(n, marginal.levels());
  std::vector<TypePoint> types = enumerate_hetero(grid, false);
  std::vector<double> weights;
  weights.reserve(types.size());
  for (const TypePoint& v : types) {
    double w = 1.0;
    for (double x : v.v) {
      w *= marginal.pmf(level_index(marginal.levels(), x));
    }
    weights.push_back(w);
  }
  return Distribution::Normalized(Domain::kHeterogeneous, marginal.levels(),
                                  std::move(types), std::move(weights));
}

Distribution mixture(const std::vector<Distribution>& parts,
                     const std::vector<double>& mix) {
  if (parts.empty() || parts.size() != mix.size()) {
    throw Error("mixture: need one mixing weight per component");
  }
  double total = 0.0;
  for (double c : mix) {
    if (!(c >= 0.0)) throw Error("mixture: negative mixing weight");
    total += c;
  }
  if (std::abs(total - 1.0) > 1e-12) throw Error("mixture: mixing weights must sum to 1");
  std::map<TypePoint, double> acc;
  for (std::size_t c = 0; c < parts.size(); ++c) {
    const Distribution& d = parts[c];
    if (d.domain() != parts[0].domain() || d.n() != parts[0].n() ||
        d.levels() != parts[0].levels()) {
      throw Error("mixture: components differ in domain, n or levels");
    }
    for (std::size_t k = 0; k < d.size(); ++k) {
      acc[d.types()[k]] += mix[c] * d.weights()[k];
    }
  }
  std::vector<TypePoint> types;
  std::vector<double> weights;
  for (auto& [v, w] : acc) {
    types.push_back(v);
    weights.push_back(w);
  }
  return Distribution::Normalized(parts[0].domain(), parts[0].levels(),
                                  std::move(types), std::move(weights));
}

Distribution restrict_to_strict(const Distribution& dist) {
  std::vector<TypePoint> types;
  std::vector<double> weights;
  for (std::size_t k = 0; k < dist.size(); ++k) {
    if (dist.types()[k].is_strict()) {
      types.push_back(dist.types()[k]);
      weights.push_back(dist.weights()[k]);
    }
  }
  if (types.empty()) throw Error("restrict_to_strict: no strict types");
  return Distribution::Normalized(dist.domain(), dist.levels(),
                                  std::move(types), std::move(weights));
}

AuditReport is_exchangeable(const Distribution& dist, double tol) {
  AuditReport report("exchangeable", tol);
  if (dist.domain() != Domain::kHeterogeneous) {
    throw Error("is_exchangeable: heterogeneous domain required");
  }
  const std::vector<Permutation> perms = all_permutations(dist.n());
  for (std::size_t k = 0; k < dist.size(); ++k) {
    const TypePoint& v = dist.types()[k];
    for (const Permutation& s : perms) {
      if (s.is_identity()) continue;
      const TypePoint vs = apply_permutation(v, s);
      const double gap = std::fabs(dist.weights()[k] - dist.weight_of(vs));
      report.count_checked();
      if (gap > tol) {
        report.add_violation({{v, vs}, gap, "sigma=" + s.to_string()});
      }
    }
  }
  return report;
}

Distribution to_identical_density(const Distribution& dist, double tol) {
  const AuditReport exch = is_exchangeable(dist, tol);
  if (!exch.passed()) {
    throw Error("to_identical_density: input is not exchangeable");
  }
  const std::vector<Permutation> perms = all_permutations(dist.n());
  std::vector<TypePoint> types;
  std::vector<double> weights;
  double tied_mass = 0.0;
  std::map<TypePoint, bool> seen;
  for (std::size_t k = 0; k < dist.size(); ++k) {
    const TypePoint& v = dist.types()[k];
    if (!v.is_strict()) {
      tied_mass += dist.weights()[k];
      continue;
    }
    const TypePoint s = sorted_decreasing(v);
    if (!seen.emplace(s, true).second) continue;
    // Orbit sum; equals n! f(s) under exact exchangeability.
    double orbit = 0.0;
    for (const Permutation& p : perms) {
      orbit += dist.weight_of(apply_permutation(s, p));
    }
    types.push_back(s);
    weights.push_back(orbit);
  }
  if (tied_mass > tol) {
    throw Error("to_identical_density: positive mass on tied types");
  }
  std::vector<std::size_t> order(types.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return types[a] < types[b]; });
  std::vector<TypePoint> sorted_types;
  std::vector<double> sorted_weights;
  for (std::size_t i : order) {
    sorted_types.push_back(types[i]);
    sorted_weights.push_back(weights[i]);
  }
  return Distribution::Normalized(Domain::kIdentical, dist.levels(),
                                  std::move(sorted_types),
                                  std::move(sorted_weights));
}

std::vector<MarginalCdf> marginals(const Distribution& dist) {
  const std::size_t m = dist.levels().size();
  std::vector<std::vector<double>> pmf(dist.n(), std::vector<double>(m, 0.0));
  for (std::size_t k = 0; k < dist.size(); ++k) {
    const TypePoint& v = dist.types()[k];
    for (int i = 0; i < dist.n(); ++i) {
      pmf[i][level_index(dist.levels(), v[i])] += dist.weights()[k];
    }
  }
  std::vector<MarginalCdf> out;
  for (int i = 0; i < dist.n(); ++i) {
    std::vector<double> cdf(m);
    double running = 0.0;
    for (std::size_t l = 0; l < m; ++l) {
      running += pmf[i][l];
      cdf[l] = std::min(running, 1.0);
    }
    cdf.back() = 1.0;
    out.emplace_back(dist.levels(), std::move(cdf));
  }
  return out;
}

MarginalCdf average_marginal(const Distribution& dist) {
  const std::vector<MarginalCdf> g = marginals(dist);
  const std::size_t m = dist.levels().size();
  std::vector<double> cdf(m, 0.0);
  for (std::size_t l = 0; l < m; ++l) {
    for (const MarginalCdf& gi : g) cdf[l] += gi.cdf()[l];
    cdf[l] /= static_cast<double>(g.size());
  }
  cdf.back() = 1.0;
  return MarginalCdf(dist.levels(), std::move(cdf));
}

Distribution comonotone_fmin(const MarginalCdf& g_avg, int n) {
  if (n < 1) throw Error("comonotone_fmin: n must be positive");
  std::vector<TypePoint> types;
  std::vector<double> weights;
  for (std::size_t l = 0; l < g_avg.size(); ++l) {
    types.emplace_back(std::vector<double>(n, g_avg.levels()[l]));
    weights.push_back(g_avg.pmf(l));
  }
  return Distribution::Normalized(Domain::kIdentical, g_avg.levels(),
                                  std::move(types), std::move(weights));
}

ShiftMap ShiftMap::Same(std::vector<int> map, int n) {
  return ShiftMap{std::vector<std::vector<int>>(n, std::move(map))};
}

ShiftMap ShiftMap::OneStepUp(std::size_t num_levels, int n) {
  std::vector<int> map(num_levels);
  for (std::size_t l = 0; l < num_levels; ++l) {
    map[l] = static_cast<int>(std::min(l + 1, num_levels - 1));
  }
  return Same(std::move(map), n);
}

Distribution fosd_shift(const Distribution& dist, const ShiftMap& shift) {
  const int m = static_cast<int>(dist.levels().size());
  if (static_cast<int>(shift.per_coordinate.size()) != dist.n()) {
    throw Error("fosd_shift: need one level map per coordinate");
  }
  for (const std::vector<int>& map : shift.per_coordinate) {
    if (static_cast<int>(map.size()) != m) {
      throw Error("fosd_shift: level map must cover every level");
    }
    for (int l = 0; l < m; ++l) {
      if (map[l] < 0 || map[l] >= m) {
        throw Error("fosd_shift: map is not level-valued");
      }
      if (map[l] < l) throw Error("fosd_shift: map moves a level down");
      if (l > 0 && map[l] < map[l - 1]) {
        throw Error("fosd_shift: map is not monotone");
      }
    }
  }
  std::map<TypePoint, double> acc;
  for (const TypePoint& v : dist.types()) acc.emplace(v, 0.0);
  for (std::size_t k = 0; k < dist.size(); ++k) {
    const TypePoint& v = dist.types()[k];
    std::vector<double> image(v.size());
    for (int i = 0; i < dist.n(); ++i) {
      const int l = level_index(dist.levels(), v[i]);
      image[i] = dist.levels()[shift.per_coordinate[i][l]];
    }
    TypePoint w(std::move(image));
    if (dist.domain() == Domain::kIdentical && !w.is_sorted_decreasing()) {
      throw Error("fosd_shift: image leaves the identical domain at " +
                  v.to_string());
    }
    acc[w] += dist.weights()[k];
  }
  std::vector<TypePoint> types;
  std::vector<double> weights;
  for (auto& [v, w] : acc) {
    types.push_back(v);
    weights.push_back(w);
  }
  return Distribution::Normalized(dist.domain(), dist.levels(),
                                  std::move(types), std::move(weights));
}

AuditReport check_mcafee_mcmillan(std::span<const double> density,
                                  const Grid& grid, double tol) {
  const int n = grid.n();
  const int m = static_cast<int>(grid.num_levels());
  if (m < 3) throw Error("check_mcafee_mcmillan: at least 3 levels per axis");
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) total *= m;
  if (density.size() != total) {
    throw Error("check_mcafee_mcmillan: density size does not match grid");
  }
  std::vector<std::size_t> stride(n, 1);
  for (int i = n - 2; i >= 0; --i) stride[i] = stride[i + 1] * m;
  const std::vector<double>& lv = grid.levels();

  AuditReport report("mcafee_mcmillan", tol);
  std::vector<int> idx(n, 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    for (int i = 0; i < n; ++i) {
      idx[i] = static_cast<int>(rest / stride[i]);
      rest %= stride[i];
    }
    const double f = density[flat];
    double expr = 3.0 * f;
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) {
      v[i] = lv[idx[i]];
      const int lo = std::max(idx[i] - 1, 0);
      const int hi = std::min(idx[i] + 1, m - 1);
      const double df = density[flat + (hi - idx[i]) * stride[i]] -
                        density[flat - (idx[i] - lo) * stride[i]];
      expr += v[i] * df / (lv[hi] - lv[lo]);
    }
    report.count_checked();
    if (expr < -tol) {
      report.add_violation({{TypePoint(v)}, -expr, "3f + v.grad f < 0"});
    }
  }
  return report;
}

double evaluate_density(const DensitySpec& spec, const Grid& grid,
                        const TypePoint& v) {
  if (spec.name == "uniform") return 1.0;
  if (spec.name == "exp_rate_a") {
    double s = 0.0;
    for (double x : v.v) s += x;
    return std::exp(-spec.a * s);
  }
  if (spec.name == "beta_ab") {
    double f = 1.0;
    const double width = grid.v_high() - grid.v_low();
    for (double x : v.v) {
      const double z = (x - grid.v_low()) / width;
      f *= std::pow(z, spec.a - 1.0) * std::pow(1.0 - z, spec.b - 1.0);
    }
    return f;
  }
  throw Error("unknown density '" + spec.name + "'");
}

std::vector<double> density_on_box(const DensitySpec& spec, const Grid& grid) {
  std::vector<double> out;
  for (const TypePoint& v : enumerate_hetero(grid, false)) {
    out.push_back(evaluate_density(spec, grid, v));
  }
  return out;
}

Distribution density_distribution(const DensitySpec& spec, const Grid& grid,
                                  Domain domain, bool strict_only) {
  std::vector<TypePoint> types = domain == Domain::kIdentical
                                     ? enumerate_identical(grid, strict_only)
                                     : enumerate_hetero(grid, strict_only);
  std::vector<double> weights;
  for (const TypePoint& v : types) {
    const double f = evaluate_density(spec, grid, v);
    if (!(f >= 0.0) || !std::isfinite(f)) {
      throw Error("density '" + spec.name + "' is not finite at " +
                  v.to_string());
    }
    weights.push_back(f);
  }
  return Distribution::Normalized(domain, grid.levels(), std::move(types),
                                  std::move(weights));
}

}  // namespace mechlab
