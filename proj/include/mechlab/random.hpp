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


// Seeded generators for fuzzing. Streams are fixed by the seed alone:
// mt19937_64, doubles as (x >> 11) * 2^-53.

#ifndef MECHLAB_RANDOM_HPP_
#define MECHLAB_RANDOM_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "mechlab/mechanism.hpp"

namespace mechlab {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  // Uniform on [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Uniform on {0, ..., k-1}.
  std::size_t index(std::size_t k);
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

struct RandomMenuOptions {
  int items = 6;
  // Item price drawn from [0, price_scale * sum(allocation) * v_high].
  double price_scale = 0.8;
  // Allocations of the form (1, ..., 1, alpha, 0, ..., 0).
  bool almost_deterministic = false;
  // Snap allocation coordinates to {0, 1/2, 1}, which leaves ties and wide
  // subgradient polytopes on the grid.
  bool coarse = false;
};

// Items have sorted allocations on the identical domain.
Menu random_menu(int n, Domain domain, double v_high, const RandomMenuOptions& opt,
                 Rng& rng);

// menu_to_mechanism of a random menu: IC and IR by construction.
Mechanism random_ic_mechanism(const std::vector<TypePoint>& types, Domain domain,
                              double v_high, const RandomMenuOptions& opt, Rng& rng);

}  // namespace mechlab

#endif  // MECHLAB_RANDOM_HPP_
