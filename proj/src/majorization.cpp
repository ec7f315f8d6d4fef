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

#include "mechlab/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "mechlab/error.hpp"
#include "mechlab/symmetry.hpp"

namespace mechlab {

bool weakly_majorizes(std::span<const double> a, std::span<const double> b, double tol) {
  if (a.size() != b.size()) throw Error("weakly_majorizes: length mismatch");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end(), std::greater<>());
  std::sort(y.begin(), y.end(), std::greater<>());
  double sx = 0.0;
  double sy = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    sx += x[j];
    sy += y[j];
    if (sx < sy - tol) return false;
  }
  return true;
}

namespace {

// Groups type indices by (i, v_-i).
std::vector<std::vector<std::size_t>> coordinate_lines(const Mechanism& mech, int i) {
  std::map<std::vector<double>, std::vector<std::size_t>> lines;
  for (std::size_t k = 0; k < mech.size(); ++k) {
    std::vector<double> rest = mech.type(k).v;
    rest.erase(rest.begin() + i);
    lines[rest].push_back(k);
  }
  std::vector<std::vector<std::size_t>> out;
  for (auto& [key, members] : lines) {
    if (members.size() > 1) out.push_back(std::move(members));
  }
  return out;
}

std::string coord(int i) { return "i=" + std::to_string(i + 1); }

}  // namespace

AuditReport check_prop_schur(const Mechanism& mech, double tol) {
  constexpr double kHypothesisTol = 1e-8;
  if (!check_ic(mech, kHypothesisTol).passed()) {
    throw Error("check_prop_schur: mechanism is not IC");
  }
  const int n = mech.n();
  // Sorted representative of each type: its index and permutation.
  std::vector<std::size_t> rep(mech.size());
  if (mech.domain() == Domain::kHeterogeneous) {
    if (!is_symmetric(mech, kHypothesisTol).passed()) {
      throw Error("check_prop_schur: heterogeneous mechanism is not symmetric");
    }
    for (std::size_t k = 0; k < mech.size(); ++k) {
      const TypePoint& v = mech.type(k);
      if (!v.is_strict()) throw Error("check_prop_schur: tied heterogeneous type");
      rep[k] = mech.index_of(apply_permutation(v, cell_of(v)));
    }
  } else {
    for (std::size_t k = 0; k < mech.size(); ++k) rep[k] = k;
  }

  AuditReport report("prop_schur", tol);
  for (std::size_t h = 0; h < mech.size(); ++h) {
    for (std::size_t k = 0; k < mech.size(); ++k) {
      if (h == k) continue;
      report.count_checked();
      if (!weakly_majorizes(mech.q(h), mech.q(k))) continue;
      const std::size_t a = rep[h];
      const std::size_t b = rep[k];
      const TypePoint& v = mech.type(b);
      double telescoped = 0.0;
      double prefix = 0.0;
      double direct = 0.0;
      for (int j = 0; j < n; ++j) {
        prefix += mech.q(a)[j] - mech.q(b)[j];
        const double gap = v[j] - (j + 1 < n ? v[j + 1] : 0.0);
        telescoped += gap * prefix;
        direct += v[j] * (mech.q(a)[j] - mech.q(b)[j]);
      }
      const double dt = mech.t(h) - mech.t(k);
      if (std::abs(telescoped - direct) > 1e-9) {
        report.add_violation({{mech.type(h), mech.type(k)},
                              std::abs(telescoped - direct),
                              "telescoping identity mismatch"});
      }
      if (dt < -tol) {
        report.add_violation({{mech.type(h), mech.type(k)},
                              -dt,
                              "majorized allocation with lower payment, bound " +
                                  format_number(telescoped)});
      }
    }
  }
  return report;
}

AuditReport check_majorization_monotonicity(const Mechanism& mech, double tol) {
  AuditReport report("majorization_monotone", tol);
  for (int i = 0; i < mech.n(); ++i) {
    for (const auto& line : coordinate_lines(mech, i)) {
      for (std::size_t h : line) {
        for (std::size_t k : line) {
          if (h == k) continue;
          report.count_checked();
          if (mech.q(h)[i] > mech.q(k)[i] + tol &&
              !weakly_majorizes(mech.q(h), mech.q(k), tol)) {
            report.add_violation({{mech.type(h), mech.type(k)},
                                  mech.q(h)[i] - mech.q(k)[i],
                                  coord(i) + " rose without weak majorization"});
          }
        }
      }
    }
  }
  return report;
}

bool is_almost_deterministic_vector(std::span<const double> a, double tol) {
  int fractional = 0;
  for (double x : a) {
    if (std::min(std::abs(x), std::abs(1.0 - x)) > tol) ++fractional;
  }
  return fractional <= 1;
}

AuditReport is_almost_deterministic(const Mechanism& mech, double tol) {
  AuditReport report("almost_deterministic", tol);
  for (std::size_t k = 0; k < mech.size(); ++k) {
    report.count_checked();
    int fractional = 0;
    double worst = 0.0;
    for (double x : mech.q(k)) {
      const double d = std::min(std::abs(x), std::abs(1.0 - x));
      if (d > tol) {
        ++fractional;
        worst = std::max(worst, d);
      }
    }
    if (fractional > 1) {
      report.add_violation({{mech.type(k)},
                            worst,
                            std::to_string(fractional) + " fractional coordinates"});
    }
  }
  return report;
}

AuditReport check_object_nonbossy(const Mechanism& mech, double tol) {
  AuditReport report("object_nonbossy", tol);
  for (int i = 0; i < mech.n(); ++i) {
    for (const auto& line : coordinate_lines(mech, i)) {
      for (std::size_t a = 0; a < line.size(); ++a) {
        for (std::size_t b = a + 1; b < line.size(); ++b) {
          const std::size_t h = line[a];
          const std::size_t k = line[b];
          report.count_checked();
          if (std::abs(mech.q(h)[i] - mech.q(k)[i]) > tol) continue;
          double worst = 0.0;
          for (int j = 0; j < mech.n(); ++j) {
            worst = std::max(worst, std::abs(mech.q(h)[j] - mech.q(k)[j]));
          }
          if (worst > tol) {
            report.add_violation({{mech.type(h), mech.type(k)},
                                  worst,
                                  coord(i) + " unchanged but allocation differs"});
          }
        }
      }
    }
  }
  return report;
}

AuditReport check_payment_monotone(const Mechanism& mech, double tol) {
  AuditReport report("payment_monotone", tol);
  for (std::size_t h = 0; h < mech.size(); ++h) {
    for (std::size_t k = 0; k < mech.size(); ++k) {
      if (h == k) continue;
      const TypePoint& a = mech.type(h);
      const TypePoint& b = mech.type(k);
      bool above = true;
      for (std::size_t i = 0; i < a.size() && above; ++i) above = a[i] >= b[i];
      if (!above) continue;
      report.count_checked();
      if (mech.t(h) < mech.t(k) - tol) {
        report.add_violation({{a, b}, mech.t(k) - mech.t(h), "higher type pays less"});
      }
    }
  }
  return report;
}

bool componentwise_comparable(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error("componentwise_comparable: length mismatch");
  bool ge = true;
  bool le = true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ge = ge && a[i] >= b[i];
    le = le && a[i] <= b[i];
  }
  return ge || le;
}

std::vector<std::vector<double>> sorted_almost_deterministic(
    int n, const std::vector<double>& alphas) {
  std::vector<std::vector<double>> out;
  for (int k = 0; k < n; ++k) {
    for (double alpha : alphas) {
      std::vector<double> x(n, 0.0);
      for (int j = 0; j < k; ++j) x[j] = 1.0;
      x[k] = alpha;
      out.push_back(std::move(x));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace mechlab
