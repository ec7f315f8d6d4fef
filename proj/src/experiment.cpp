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


#include "mechlab/experiment.hpp"

#include "mechlab/error.hpp"
#include "mechlab/majorization.hpp"
#include "mechlab/repair.hpp"
#include "mechlab/symmetry.hpp"

namespace mechlab {

const char* monotonicity_basis_name(MonotonicityBasis b) {
  switch (b) {
    case MonotonicityBasis::kAlmostDeterministic:
      return "almost_deterministic";
    case MonotonicityBasis::kMajorizationAfterRepair:
      return "majorization_monotone_after_repair";
    case MonotonicityBasis::kNone:
      break;
  }
  return "none";
}

namespace {

void compare(AuditReport& report, const std::string& what, double before, double after,
             bool asserted) {
  const std::string line = what + ": " + format_number(before) + " -> " +
                           format_number(after) + (asserted ? " (asserted)" : " (reported)");
  report.add_note(line);
  if (!asserted) return;
  report.count_checked();
  if (after < before - report.tolerance()) {
    report.add_violation({{}, before - after, what + " revenue fell"});
  }
}

bool on_singletons(const Mechanism& mech, const std::vector<char>& singleton,
                   const Distribution& dist) {
  for (std::size_t k = 0; k < dist.size(); ++k) {
    if (dist.weights()[k] <= 0.0) continue;
    const auto idx = mech.find(dist.types()[k]);
    if (!idx || !singleton[*idx]) return false;
  }
  return true;
}

}  // namespace

MonotonicityResult run_revenue_monotonicity_experiment(const Mechanism& mech,
                                                       const Distribution& dist,
                                                       const ShiftMap& shift,
                                                       double tol) {
  constexpr double kHypothesisTol = 1e-8;
  if (!check_ic(mech, kHypothesisTol).passed() || !check_ir(mech, kHypothesisTol).passed()) {
    throw Error("monotonicity experiment: mechanism is not IC and IR");
  }
  const Distribution shifted = fosd_shift(dist, shift);
  MonotonicityResult out;
  out.audit = AuditReport("revenue_monotone", tol);
  out.revenue_before = expected_revenue(mech, dist);
  out.revenue_after = expected_revenue(mech, shifted);

  const bool sym_ok = mech.domain() == Domain::kIdentical ||
                      is_symmetric(mech, kHypothesisTol).passed();
  const bool almost_det = is_almost_deterministic(mech).passed();
  if (!sym_ok) out.audit.add_note("heterogeneous mechanism is not symmetric");

  if (sym_ok && almost_det) {
    out.basis = MonotonicityBasis::kAlmostDeterministic;
    out.original_asserted = true;
  } else if (sym_ok) {
    const RepairResult rep = lmax_repair(mech);
    out.repaired_before = expected_revenue(rep.mechanism, dist);
    out.repaired_after = expected_revenue(rep.mechanism, shifted);
    const AuditReport mm = check_majorization_monotonicity(rep.mechanism);
    out.audit.add_note(std::string("repaired majorization monotone: ") +
                       (mm.passed() ? "yes" : "no"));
    if (mm.passed()) {
      out.basis = MonotonicityBasis::kMajorizationAfterRepair;
      out.repaired_asserted = true;
      out.original_asserted = on_singletons(mech, rep.singleton, dist) &&
                              on_singletons(mech, rep.singleton, shifted);
    }
    compare(out.audit, "repaired", *out.repaired_before, *out.repaired_after,
            out.repaired_asserted);
  }
  compare(out.audit, "original", out.revenue_before, out.revenue_after,
          out.original_asserted);
  out.audit.add_note(std::string("basis: ") + monotonicity_basis_name(out.basis));
  return out;
}

}  // namespace mechlab
