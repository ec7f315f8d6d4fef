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

// Dense two-phase tableau simplex for  max c.x  s.t.  A x <= b, x >= 0.
//
// The tableau keeps only nonbasic columns plus one artificial column for
// phase 1, the right-hand side and a perturbation column. Entering columns
// follow Dantzig's rule (most negative reduced cost, lowest variable index on
// ties). The leaving row is the minimum ratio; ratios within eps are ordered
// by the perturbation column, which solves b + e p for a fixed generic p and
// infinitesimal e and so never revisits a basis. The pivot sequence depends
// only on the input, so repeated solves are bitwise identical.

#ifndef MECHLAB_SIMPLEX_HPP_
#define MECHLAB_SIMPLEX_HPP_

#include <cstddef>
#include <vector>

namespace mechlab {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

const char* lp_status_name(LpStatus s);

struct SimplexOptions {
  double eps = 1e-9;              // reduced-cost and ratio-test threshold
  double drop = 1e-13;            // pivot-column entries treated as zero
  std::size_t max_pivots = 2000000;
};

struct StandardForm {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> a;  // row-major rows x cols
  std::vector<double> b;
  std::vector<double> c;

  double& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

struct SimplexResult {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> x;  // primal, size cols
  std::vector<double> y;  // row duals, size rows, y >= 0
  double objective = 0.0;
  std::size_t pivots = 0;
};

SimplexResult solve_standard(const StandardForm& lp, const SimplexOptions& opt = {});

}  // namespace mechlab

#endif  // MECHLAB_SIMPLEX_HPP_
