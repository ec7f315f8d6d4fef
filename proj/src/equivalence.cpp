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

#include "mechlab/equivalence.hpp"

#include <cmath>

#include "mechlab/symmetry.hpp"

namespace mechlab {

namespace {

void expect_close(AuditReport& report, const std::string& what, double a, double b,
                  double tol) {
  report.count_checked();
  const double gap = std::abs(a - b);
  if (gap > tol) {
    report.add_violation({{}, gap, what + ": " + format_number(a) + " vs " +
                                       format_number(b)});
  }
}

void fold(AuditReport& report, const std::string& prefix, AuditReport part) {
  AuditReport renamed(report.check(), report.tolerance());
  renamed.count_checked(part.checked());
  for (Violation v : part.violations()) {
    v.detail = prefix + "/" + part.check() + ": " + v.detail;
    renamed.add_violation(std::move(v));
  }
  report.merge(renamed);
  report.add_note(prefix + "/" + part.check() + (part.passed() ? " pass" : " fail"));
}

}  // namespace

EquivalenceCertificate certify_equivalence(const Grid& grid, const Distribution& hetero,
                                           const EquivalenceOptions& opt) {
  const Distribution identical = to_identical_density(hetero);
  const auto id_types = enumerate_identical(grid, true);
  const auto het_types = enumerate_hetero(grid, true);

  OptimalResult ri = optimal_mechanism(id_types, identical, Domain::kIdentical, opt.lp);
  OptimalResult rs = optimal_symmetric_mechanism(het_types, hetero, opt.lp);

  AuditReport audit("equivalence", opt.revenue_tol);
  expect_close(audit, "identical vs symmetric optimum", ri.revenue, rs.revenue,
               opt.revenue_tol);

  std::optional<double> full;
  if (opt.solve_full_hetero) {
    full = optimal_mechanism(het_types, hetero, Domain::kHeterogeneous, opt.lp).revenue;
    expect_close(audit, "full vs symmetric heterogeneous optimum", *full, rs.revenue,
                 opt.revenue_tol);
  }

  Mechanism extended = symmetric_extension(ri.mechanism);
  fold(audit, "extended", check_ic(extended, opt.audit_tol));
  fold(audit, "extended", check_ir(extended, opt.audit_tol));
  fold(audit, "extended", is_symmetric(extended, 0.0));
  expect_close(audit, "extended revenue", expected_revenue(extended, hetero), ri.revenue,
               opt.revenue_tol);

  Mechanism restricted = restrict_to_cell(rs.mechanism, Permutation::Identity(grid.n()));
  fold(audit, "restricted", check_feasible_identical(restricted, opt.audit_tol));
  fold(audit, "restricted", check_ic(restricted, opt.audit_tol));
  fold(audit, "restricted", check_ir(restricted, opt.audit_tol));
  expect_close(audit, "restricted revenue", expected_revenue(restricted, identical),
               rs.revenue, opt.revenue_tol);

  return {ri.revenue,          rs.revenue,          full,
          std::move(ri.mechanism), std::move(rs.mechanism), std::move(extended),
          std::move(restricted), std::move(audit)};
}

}  // namespace mechlab
