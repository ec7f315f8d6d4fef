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


#ifndef MECHLAB_TESTS_HELPERS_HPP_
#define MECHLAB_TESTS_HELPERS_HPP_

#include <vector>

#include "mechlab/distribution.hpp"
#include "mechlab/mechanism.hpp"
#include "mechlab/typespace.hpp"

namespace mechlab::testing {

inline Grid unit_grid(int n, int points) { return Grid::Uniform(n, 0.0, 1.0, points); }

// i.i.d. uniform over the levels, heterogeneous.
inline Distribution iid_uniform(const Grid& g) {
  return iid_distribution(MarginalCdf::UniformOn(g.levels()), g.n());
}

// Equal weight on every listed type.
inline Distribution uniform_on(Domain d, const Grid& g, const std::vector<TypePoint>& types) {
  return Distribution::Normalized(d, g.levels(), types, std::vector<double>(types.size(), 1.0));
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace mechlab::testing

#endif  // MECHLAB_TESTS_HELPERS_HPP_
