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


#include "mechlab/random.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace mechlab {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::size_t Rng::index(std::size_t k) {
  const auto i = static_cast<std::size_t>(uniform() * static_cast<double>(k));
  return std::min(i, k - 1);
}

Menu random_menu(int n, Domain domain, double v_high, const RandomMenuOptions& opt,
                 Rng& rng) {
  Menu menu(n);
  for (int it = 0; it < opt.items; ++it) {
    std::vector<double> a(n, 0.0);
    if (opt.almost_deterministic) {
      const auto k = static_cast<int>(rng.index(n));
      const double alpha = opt.coarse ? 0.5 * static_cast<double>(rng.index(3)) : rng.uniform();
      for (int j = 0; j < k; ++j) a[j] = 1.0;
      a[k] = alpha;
      if (domain == Domain::kHeterogeneous) {
        for (int j = n - 1; j > 0; --j) std::swap(a[j], a[rng.index(j + 1)]);
      }
    } else {
      for (double& x : a) x = opt.coarse ? 0.5 * static_cast<double>(rng.index(3)) : rng.uniform();
      if (domain == Domain::kIdentical) std::sort(a.begin(), a.end(), std::greater<>());
    }
    double mass = 0.0;
    for (double x : a) mass += x;
    const double price = rng.uniform() * opt.price_scale * mass * v_high;
    menu.add({std::move(a), price});
  }
  return menu;
}

Mechanism random_ic_mechanism(const std::vector<TypePoint>& types, Domain domain,
                              double v_high, const RandomMenuOptions& opt, Rng& rng) {
  const int n = static_cast<int>(types.front().size());
  return menu_to_mechanism(random_menu(n, domain, v_high, opt, rng), types, domain);
}

}  // namespace mechlab
