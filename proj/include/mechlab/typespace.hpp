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

// Discretized valuation spaces.
//
// A Grid fixes the number of objects n and a strictly increasing list of
// valuation levels. Types are vectors of levels. The heterogeneous domain is
// the full n-fold product; the identical domain keeps only weakly decreasing
// vectors (decreasing marginal values). Strict types, with pairwise distinct
// coordinates, are partitioned into n! cells: the cell of a permutation s
// holds the types with v[s(0)] > v[s(1)] > ... > v[s(n-1)].
//
// Permutations act on types by v^s[j] = v[s(j)]. All indices are 0-based.

#ifndef MECHLAB_TYPESPACE_HPP_
#define MECHLAB_TYPESPACE_HPP_

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace mechlab {

enum class Domain { kIdentical, kHeterogeneous };

const char* domain_name(Domain d);
// Accepts "identical" and "heterogeneous"; throws otherwise.
Domain parse_domain(const std::string& name);

class Grid {
 public:
  // Levels v_low + i * (v_high - v_low) / (points - 1), computed once.
  static Grid Uniform(int n, double v_low, double v_high, int points);
  // Explicit levels; bounds default to the first and last level.
  static Grid FromLevels(int n, std::vector<double> levels);
  static Grid FromLevels(int n, std::vector<double> levels, double v_low,
                         double v_high);

  int n() const { return n_; }
  const std::vector<double>& levels() const { return levels_; }
  std::size_t num_levels() const { return levels_.size(); }
  double v_low() const { return v_low_; }
  double v_high() const { return v_high_; }
  // Spacing between the first two levels (the grid step for uniform grids).
  double step() const { return levels_[1] - levels_[0]; }

  // Index of an exact level value, or -1.
  int level_index(double value) const;

 private:
  Grid(int n, std::vector<double> levels, double v_low, double v_high);

  int n_;
  std::vector<double> levels_;
  double v_low_;
  double v_high_;
};

struct TypePoint {
  std::vector<double> v;

  TypePoint() = default;
  explicit TypePoint(std::vector<double> values) : v(std::move(values)) {}
  TypePoint(std::initializer_list<double> values) : v(values) {}

  std::size_t size() const { return v.size(); }
  double operator[](std::size_t i) const { return v[i]; }
  std::span<const double> values() const { return v; }

  bool is_strict() const;
  bool is_sorted_decreasing() const;
  std::string to_string() const;

  friend auto operator<=>(const TypePoint&, const TypePoint&) = default;
  friend bool operator==(const TypePoint&, const TypePoint&) = default;
};

class Permutation {
 public:
  // mapping[j] = s(j); must be a bijection on {0, ..., n-1}.
  explicit Permutation(std::vector<int> mapping);
  static Permutation Identity(int n);
  // 1-based image list, e.g. {2, 3, 1}.
  static Permutation FromOneBased(std::initializer_list<int> images);

  int size() const { return static_cast<int>(mapping_.size()); }
  int operator()(int j) const { return mapping_[j]; }
  const std::vector<int>& mapping() const { return mapping_; }

  bool is_identity() const;
  Permutation inverse() const;
  // (a * b)(j) = a(b(j)); then (v^a)^b = v^(a * b).
  friend Permutation operator*(const Permutation& a, const Permutation& b);

  std::string to_string() const;  // 1-based, "(2,3,1)"

  friend auto operator<=>(const Permutation&, const Permutation&) = default;
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> mapping_;
};

// All n! permutations in lexicographic order of their mappings; the first
// entry is the identity.
std::vector<Permutation> all_permutations(int n);

// n-fold products of the grid levels in lexicographic order.
std::vector<TypePoint> enumerate_hetero(const Grid& grid, bool strict_only);

// Weakly (or strictly) decreasing level vectors in lexicographic order.
std::vector<TypePoint> enumerate_identical(const Grid& grid, bool strict_only);

// v^s with v^s[j] = v[s(j)]. Throws on dimension mismatch.
TypePoint apply_permutation(const TypePoint& v, const Permutation& s);

// The unique s with v in the cell of s, i.e. apply_permutation(v, s) strictly
// decreasing. Throws "not a strict type" on ties.
Permutation cell_of(const TypePoint& v);

// Permutes an allocation vector the way a symmetric mechanism does:
// result[s(i)] = x[i].
std::vector<double> scatter(std::span<const double> x, const Permutation& s);

// Sorted-decreasing copy of v.
TypePoint sorted_decreasing(const TypePoint& v);

}  // namespace mechlab

#endif  // MECHLAB_TYPESPACE_HPP_
