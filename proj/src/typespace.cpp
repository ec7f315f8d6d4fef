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

#include "mechlab/typespace.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "mechlab/error.hpp"

namespace mechlab {

const char* domain_name(Domain d) {
  return d == Domain::kIdentical ? "identical" : "heterogeneous";
}

Domain parse_domain(const std::string& name) {
  if (name == "identical") return Domain::kIdentical;
  if (name == "heterogeneous") return Domain::kHeterogeneous;
  throw Error("unknown domain tag '" + name + "'");
}

Grid::Grid(int n, std::vector<double> levels, double v_low, double v_high)
    : n_(n), levels_(std::move(levels)), v_low_(v_low), v_high_(v_high) {
  if (n_ < 1) throw Error("grid: n must be at least 1");
  if (levels_.size() < 2) throw Error("grid: at least 2 levels required");
  if (!(v_low_ >= 0.0) || !(v_low_ < v_high_) || !std::isfinite(v_high_)) {
    throw Error("grid: bounds must satisfy 0 <= v_low < v_high < inf");
  }
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    if (!std::isfinite(levels_[i])) throw Error("grid: non-finite level");
    if (i > 0 && !(levels_[i] > levels_[i - 1])) {
      throw Error("grid: levels must be strictly increasing");
    }
  }
  if (levels_.front() < v_low_ || levels_.back() > v_high_) {
    throw Error("grid: levels outside [v_low, v_high]");
  }
}

Grid Grid::Uniform(int n, double v_low, double v_high, int points) {
  if (points < 2) throw Error("grid: at least 2 points required");
  std::vector<double> levels(points);
  const double step = (v_high - v_low) / (points - 1);
  for (int i = 0; i < points; ++i) levels[i] = v_low + i * step;
  levels.back() = v_high;
  return Grid(n, std::move(levels), v_low, v_high);
}

Grid Grid::FromLevels(int n, std::vector<double> levels) {
  if (levels.empty()) throw Error("grid: at least 2 levels required");
  const double lo = levels.front();
  const double hi = levels.back();
  return Grid(n, std::move(levels), lo, hi);
}

Grid Grid::FromLevels(int n, std::vector<double> levels, double v_low,
                      double v_high) {
  return Grid(n, std::move(levels), v_low, v_high);
}

int Grid::level_index(double value) const {
  auto it = std::lower_bound(levels_.begin(), levels_.end(), value);
  if (it == levels_.end() || *it != value) return -1;
  return static_cast<int>(it - levels_.begin());
}

bool TypePoint::is_strict() const {
  std::vector<double> s = v;
  std::sort(s.begin(), s.end());
  return std::adjacent_find(s.begin(), s.end()) == s.end();
}

bool TypePoint::is_sorted_decreasing() const {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[i - 1]) return false;
  }
  return true;
}

std::string TypePoint::to_string() const {
  std::string out = "(";
  char buf[32];
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.12g", v[i]);
    if (i > 0) out += ",";
    out += buf;
  }
  return out + ")";
}

Permutation::Permutation(std::vector<int> mapping)
    : mapping_(std::move(mapping)) {
  std::vector<char> seen(mapping_.size(), 0);
  for (int image : mapping_) {
    if (image < 0 || image >= size() || seen[image]) {
      throw Error("permutation: mapping is not a bijection");
    }
    seen[image] = 1;
  }
}

Permutation Permutation::Identity(int n) {
  std::vector<int> m(n);
  std::iota(m.begin(), m.end(), 0);
  return Permutation(std::move(m));
}

Permutation Permutation::FromOneBased(std::initializer_list<int> images) {
  std::vector<int> m;
  m.reserve(images.size());
  for (int x : images) m.push_back(x - 1);
  return Permutation(std::move(m));
}

bool Permutation::is_identity() const {
  for (int j = 0; j < size(); ++j) {
    if (mapping_[j] != j) return false;
  }
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(mapping_.size());
  for (int j = 0; j < size(); ++j) inv[mapping_[j]] = j;
  return Permutation(std::move(inv));
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw Error("permutation: size mismatch");
  std::vector<int> m(a.size());
  for (int j = 0; j < a.size(); ++j) m[j] = a(b(j));
  return Permutation(std::move(m));
}

std::string Permutation::to_string() const {
  std::string out = "(";
  for (int j = 0; j < size(); ++j) {
    if (j > 0) out += ",";
    out += std::to_string(mapping_[j] + 1);
  }
  return out + ")";
}

std::vector<Permutation> all_permutations(int n) {
  std::vector<int> m(n);
  std::iota(m.begin(), m.end(), 0);
  std::vector<Permutation> out;
  do {
    out.emplace_back(m);
  } while (std::next_permutation(m.begin(), m.end()));
  return out;
}

namespace {

// Odometer over level indices; the last coordinate moves fastest, which gives
// lexicographic order because levels are increasing.
template <typename Keep>
std::vector<TypePoint> enumerate_product(const Grid& grid, Keep keep) {
  const int n = grid.n();
  const int m = static_cast<int>(grid.num_levels());
  std::vector<int> idx(n, 0);
  std::vector<TypePoint> out;
  while (true) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = grid.levels()[idx[i]];
    TypePoint p(std::move(v));
    if (keep(p)) out.push_back(std::move(p));
    int pos = n - 1;
    while (pos >= 0 && ++idx[pos] == m) idx[pos--] = 0;
    if (pos < 0) break;
  }
  return out;
}

}  // namespace

std::vector<TypePoint> enumerate_hetero(const Grid& grid, bool strict_only) {
  return enumerate_product(grid, [strict_only](const TypePoint& p) {
    return !strict_only || p.is_strict();
  });
}

std::vector<TypePoint> enumerate_identical(const Grid& grid, bool strict_only) {
  return enumerate_product(grid, [strict_only](const TypePoint& p) {
    return p.is_sorted_decreasing() && (!strict_only || p.is_strict());
  });
}

TypePoint apply_permutation(const TypePoint& v, const Permutation& s) {
  if (static_cast<int>(v.size()) != s.size()) {
    throw Error("apply_permutation: dimension mismatch");
  }
  std::vector<double> out(v.size());
  for (int j = 0; j < s.size(); ++j) out[j] = v[s(j)];
  return TypePoint(std::move(out));
}

Permutation cell_of(const TypePoint& v) {
  if (!v.is_strict()) {
    throw Error("cell_of: not a strict type " + v.to_string());
  }
  std::vector<int> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&v](int a, int b) { return v[a] > v[b]; });
  return Permutation(std::move(order));
}

std::vector<double> scatter(std::span<const double> x, const Permutation& s) {
  if (static_cast<int>(x.size()) != s.size()) {
    throw Error("scatter: dimension mismatch");
  }
  std::vector<double> out(x.size());
  for (int i = 0; i < s.size(); ++i) out[s(i)] = x[i];
  return out;
}

TypePoint sorted_decreasing(const TypePoint& v) {
  std::vector<double> s = v.v;
  std::sort(s.begin(), s.end(), std::greater<>());
  return TypePoint(std::move(s));
}

}  // namespace mechlab
