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

#include "mechlab/simplex.hpp"

#include <cmath>
#include <cstdint>
#include <utility>

namespace mechlab {

const char* lp_status_name(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
    case LpStatus::kIterationLimit: return "iteration_limit";
  }
  return "unknown";
}

namespace {

// Variables 0..n-1 are structural, n..n+m-1 slacks, -1 the artificial.
class Tableau {
 public:
  Tableau(const StandardForm& lp, const SimplexOptions& opt)
      : m_(lp.rows), n_(lp.cols), w_(n_ + 3), opt_(opt),
        d_((m_ + 2) * w_, 0.0), basis_(m_), nonbasis_(n_ + 1) {
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) cell(i, j) = lp.at(i, j);
      cell(i, n_) = -1.0;
      cell(i, n_ + 1) = lp.b[i];
      cell(i, n_ + 2) = perturbation(i);
      basis_[i] = static_cast<long>(n_ + i);
    }
    for (std::size_t j = 0; j < n_; ++j) {
      nonbasis_[j] = static_cast<long>(j);
      cell(m_, j) = -lp.c[j];
    }
    nonbasis_[n_] = -1;
    cell(m_ + 1, n_) = 1.0;
  }

  SimplexResult run() {
    SimplexResult res;
    std::size_t r = 0;
    for (std::size_t i = 1; i < m_; ++i) {
      if (rhs(i) < rhs(r) - opt_.eps ||
          (rhs(i) <= rhs(r) + opt_.eps && cell(i, n_ + 2) < cell(r, n_ + 2))) {
        r = i;
      }
    }
    if (m_ > 0 && rhs(r) < -opt_.eps) {
      pivot(r, n_);
      const LpStatus p1 = optimize(2);
      if (p1 == LpStatus::kIterationLimit) return finish(res, p1);
      if (p1 != LpStatus::kOptimal || cell(m_ + 1, n_ + 1) < -opt_.eps) {
        return finish(res, LpStatus::kInfeasible);
      }
      for (std::size_t i = 0; i < m_; ++i) {
        if (basis_[i] != -1) continue;
        std::size_t s = 0;
        for (std::size_t j = 1; j <= n_; ++j) {
          if (less(cell(i, j), nonbasis_[j], cell(i, s), nonbasis_[s])) s = j;
        }
        pivot(i, s);
      }
    }
    return finish(res, optimize(1));
  }

 private:
  double& cell(std::size_t i, std::size_t j) { return d_[i * w_ + j]; }
  double cell(std::size_t i, std::size_t j) const { return d_[i * w_ + j]; }
  double rhs(std::size_t i) const { return cell(i, n_ + 1); }

  // splitmix64 of the row index, mapped to [1, 2).
  static double perturbation(std::size_t i) {
    std::uint64_t z = (i + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return 1.0 + static_cast<double>(z >> 11) * 0x1.0p-53;
  }

  // Row i leaves before row r at entering column s.
  bool leaves_first(std::size_t i, long r, std::size_t s) const {
    const double ratio = rhs(i) / cell(i, s);
    const double best = rhs(r) / cell(r, s);
    if (ratio < best - opt_.eps) return true;
    if (ratio > best + opt_.eps) return false;
    const double pi = cell(i, n_ + 2) / cell(i, s);
    const double pr = cell(r, n_ + 2) / cell(r, s);
    return pi < pr || (pi == pr && basis_[i] < basis_[r]);
  }

  static bool less(double a, long ia, double b, long ib) {
    return a < b || (a == b && ia < ib);
  }

  void pivot(std::size_t r, std::size_t s) {
    ++pivots_;
    double* row = &d_[r * w_];
    const double inv = 1.0 / row[s];
    nz_.clear();
    for (std::size_t j = 0; j < w_; ++j) {
      if (row[j] != 0.0 && j != s) nz_.push_back(j);
    }
    for (std::size_t i = 0; i < m_ + 2; ++i) {
      if (i == r) continue;
      double* b = &d_[i * w_];
      if (std::abs(b[s]) <= opt_.drop) continue;
      const double f = b[s] * inv;
      for (std::size_t j : nz_) b[j] -= row[j] * f;
      b[s] = row[s] * f;
    }
    for (std::size_t j : nz_) row[j] *= inv;
    for (std::size_t i = 0; i < m_ + 2; ++i) {
      if (i != r) cell(i, s) *= -inv;
    }
    row[s] = inv;
    std::swap(basis_[r], nonbasis_[s]);
  }

  // phase 1 optimizes the objective row, phase 2 the auxiliary row.
  LpStatus optimize(int phase) {
    const std::size_t x = phase == 1 ? m_ : m_ + 1;
    while (true) {
      if (pivots_ >= opt_.max_pivots) return LpStatus::kIterationLimit;
      long s = -1;
      for (std::size_t j = 0; j <= n_; ++j) {
        if (nonbasis_[j] == -phase) continue;
        if (s < 0 || less(cell(x, j), nonbasis_[j], cell(x, s), nonbasis_[s])) s = j;
      }
      if (s < 0 || cell(x, s) >= -opt_.eps) return LpStatus::kOptimal;
      long r = -1;
      for (std::size_t i = 0; i < m_; ++i) {
        if (cell(i, s) <= opt_.eps) continue;
        if (r < 0 || leaves_first(i, r, s)) r = i;
      }
      if (r < 0) return LpStatus::kUnbounded;
      pivot(r, s);
    }
  }

  SimplexResult& finish(SimplexResult& res, LpStatus status) {
    res.status = status;
    res.pivots = pivots_;
    res.x.assign(n_, 0.0);
    res.y.assign(m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] >= 0 && basis_[i] < static_cast<long>(n_)) {
        res.x[basis_[i]] = rhs(i);
      }
    }
    for (std::size_t j = 0; j <= n_; ++j) {
      if (nonbasis_[j] >= static_cast<long>(n_)) {
        res.y[nonbasis_[j] - n_] = cell(m_, j);
      }
    }
    res.objective = cell(m_, n_ + 1);
    return res;
  }

  std::size_t m_, n_, w_;
  SimplexOptions opt_;
  std::vector<double> d_;
  std::vector<long> basis_;
  std::vector<long> nonbasis_;
  std::vector<std::size_t> nz_;
  std::size_t pivots_ = 0;
};

}  // namespace

SimplexResult solve_standard(const StandardForm& lp, const SimplexOptions& opt) {
  Tableau tab(lp, opt);
  return tab.run();
}

}  // namespace mechlab
