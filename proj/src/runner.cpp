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


#include "mechlab/runner.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "mechlab/deterministic.hpp"
#include "mechlab/equivalence.hpp"
#include "mechlab/error.hpp"
#include "mechlab/experiment.hpp"
#include "mechlab/majorization.hpp"
#include "mechlab/optimal.hpp"
#include "mechlab/random.hpp"
#include "mechlab/repair.hpp"
#include "mechlab/robust.hpp"
#include "mechlab/symmetry.hpp"

namespace mechlab {

using nlohmann::json;

bool ExperimentOutcome::passed() const {
  if (!error.empty()) return false;
  for (const CheckOutcome& c : checks) {
    if (c.asserted && !c.report.passed()) return false;
  }
  return true;
}

json rounded(const json& j) {
  if (j.is_number_float()) {
    const double x = j.get<double>();
    if (!std::isfinite(x)) return nullptr;
    const double r = std::strtod(format_number(x).c_str(), nullptr);
    return r == 0.0 ? 0.0 : r;
  }
  if (j.is_array()) {
    json out = json::array();
    for (const json& e : j) out.push_back(rounded(e));
    return out;
  }
  if (j.is_object()) {
    json out = json::object();
    for (const auto& [k, v] : j.items()) out[k] = rounded(v);
    return out;
  }
  return j;
}

namespace {

OptimalOptions lp_options(const ExperimentConfig& c) {
  OptimalOptions o;
  o.support_reduction = c.options.support_reduction;
  if (c.options.ic_mode == "full") o.ic_mode = IcMode::kFull;
  if (c.options.ic_mode == "generated") o.ic_mode = IcMode::kGenerated;
  return o;
}

AuditReport closeness(const std::string& check, double a, double b, double tol,
                      const std::string& what) {
  AuditReport r(check, tol);
  r.count_checked();
  const double gap = std::abs(a - b);
  if (gap > tol) {
    r.add_violation({{}, gap, what + ": " + format_number(a) + " vs " + format_number(b)});
  }
  return r;
}

AuditReport at_most(const std::string& check, double a, double b, double tol,
                    const std::string& what) {
  AuditReport r(check, tol);
  r.count_checked();
  if (a > b + tol) {
    r.add_violation({{}, a - b, what + ": " + format_number(a) + " > " + format_number(b)});
  }
  return r;
}

AuditReport utility_preserved(const Mechanism& before, const Mechanism& after, double tol) {
  AuditReport r("utility_preserved", tol);
  for (std::size_t k = 0; k < before.size(); ++k) {
    r.count_checked();
    const double d = std::abs(before.payoff(before.type(k), k) - after.payoff(after.type(k), k));
    if (d > tol) r.add_violation({{before.type(k)}, d, "utility moved"});
  }
  return r;
}

json lp_stats(const LpSolution& s) {
  return {{"status", lp_status_name(s.status)},
          {"objective", s.objective},
          {"duality_gap", s.duality_gap},
          {"primal_violation", s.primal_violation},
          {"dual_violation", s.dual_violation},
          {"pivots", s.pivots}};
}

Mechanism source_mechanism(const ExperimentConfig& c, const Distribution& dist,
                           json& results) {
  const std::vector<TypePoint> types = c.types();
  const std::string& src = c.options.source;
  results["source"] = src;
  if (src == "random") {
    Rng rng(c.seed);
    RandomMenuOptions ro;
    ro.items = c.options.items;
    ro.coarse = c.options.coarse;
    ro.almost_deterministic = c.options.rule == "almost_deterministic";
    return random_ic_mechanism(types, c.domain, c.v_high, ro, rng);
  }
  if (src == "anti_rank") return anti_rank_fixture(types);
  if (src == "uniform_price") {
    const UniformPrice up = optimal_uniform_price(average_marginal(dist), c.n);
    results["price"] = up.price;
    return uniform_price_mechanism(types, up.price);
  }
  OptimalResult r = c.kind == ExperimentKind::kCertifyTheorem1
                        ? optimal_symmetric_mechanism(types, dist, lp_options(c))
                        : optimal_mechanism(types, dist, c.domain, lp_options(c));
  results["lp_revenue"] = r.revenue;
  return std::move(r.mechanism);
}

void run_solve(const ExperimentConfig& c, ExperimentOutcome& out) {
  const Distribution dist = c.build_distribution();
  const std::vector<TypePoint> types = c.types();
  OptimalResult r = c.options.symmetric ? optimal_symmetric_mechanism(types, dist, lp_options(c))
                                        : optimal_mechanism(types, dist, c.domain, lp_options(c));
  out.results["revenue"] = r.revenue;
  out.results["lp_objective"] = r.lp_objective;
  out.results["lp"] = lp_stats(r.lp);
  out.results["ic_rows"] = r.ic_rows;
  out.results["rounds"] = r.rounds;
  out.results["support_reduced"] = r.support_reduced;
  out.results["num_types"] = types.size();
  out.results["symmetric"] = c.options.symmetric;
  out.checks.push_back({check_ic(r.mechanism, c.tolerance)});
  out.checks.push_back({check_ir(r.mechanism, c.tolerance)});
  if (c.domain == Domain::kIdentical) {
    out.checks.push_back({check_feasible_identical(r.mechanism, c.tolerance)});
  }
  if (c.options.symmetric) out.checks.push_back({is_symmetric(r.mechanism, 0.0)});
  out.mechanism = std::move(r.mechanism);
  out.distribution = dist;
}

void run_equivalence(const ExperimentConfig& c, ExperimentOutcome& out) {
  const Distribution dist = c.build_distribution();
  EquivalenceOptions eo;
  eo.revenue_tol = c.tolerance;
  eo.audit_tol = c.tolerance;
  eo.solve_full_hetero = c.options.solve_full_hetero;
  eo.lp = lp_options(c);
  EquivalenceCertificate cert = certify_equivalence(c.grid(), dist, eo);
  out.results["revenue_identical"] = cert.revenue_identical;
  out.results["revenue_symmetric"] = cert.revenue_symmetric;
  out.results["abs_diff"] = std::abs(cert.revenue_identical - cert.revenue_symmetric);
  if (cert.revenue_hetero_full) {
    out.results["revenue_hetero_full"] = *cert.revenue_hetero_full;
    out.results["abs_diff_full"] = std::abs(*cert.revenue_hetero_full - cert.revenue_symmetric);
  }
  out.checks.push_back({std::move(cert.audit)});
  out.mechanism = std::move(cert.symmetric_optimum);
  out.distribution = dist;
}

void run_theorem1(const ExperimentConfig& c, ExperimentOutcome& out) {
  const Distribution dist = c.build_distribution();
  Mechanism mech = source_mechanism(c, dist, out.results);
  if (c.options.source == "random") mech = symmetrize(mech);
  Theorem1Certificate cert = certify_theorem1(mech, c.tolerance);
  out.results["symmetric"] = cert.symmetric.passed();
  out.results["global_ic"] = cert.global_ic.passed();
  out.results["rank_preserving"] = cert.rank_preserving.passed();
  out.results["ic_on_identity_cell"] = cert.ic_on_identity_cell.passed();
  out.results["consistent"] = cert.certificate.passed();
  out.checks.push_back({std::move(cert.certificate)});
  out.checks.push_back({std::move(cert.symmetric)});
  out.checks.push_back({std::move(cert.global_ic), false});
  out.checks.push_back({std::move(cert.rank_preserving), false});
  out.checks.push_back({std::move(cert.ic_on_identity_cell), false});
  out.mechanism = std::move(mech);
  out.distribution = dist;
}

void run_robust(const ExperimentConfig& c, ExperimentOutcome& out) {
  const Distribution dist = c.build_distribution();
  const MarginalCdf g = average_marginal(dist);
  const UniformPrice up = optimal_uniform_price(g, c.n);
  const std::vector<TypePoint> types = c.types();
  Mechanism mech = uniform_price_mechanism(types, up.price);
  const WorstCase lo = worst_case_revenue(mech, g, false);
  const WorstCase hi = worst_case_revenue(mech, g, true);
  const Distribution fmin = comonotone_fmin(g, c.n);
  const OptimalResult comon = optimal_mechanism(types, fmin, Domain::kIdentical, lp_options(c));
  const WorstCase comon_wc = worst_case_revenue(comon.mechanism, g, false);
  const double resolution = c.n * c.grid().step();

  out.results["price"] = up.price;
  out.results["per_unit"] = up.per_unit;
  out.results["uniform_price_revenue"] = up.revenue;
  out.results["worst_case"] = lo.revenue;
  out.results["best_case"] = hi.revenue;
  out.results["comonotone_lp_revenue"] = comon.revenue;
  out.results["comonotone_lp_worst_case"] = comon_wc.revenue;
  out.results["price_resolution"] = resolution;
  out.checks.push_back({closeness("worst_case_constant", lo.revenue, hi.revenue, c.tolerance,
                                  "min vs max over the average-marginal polytope")});
  out.checks.push_back({closeness("worst_case_value", lo.revenue, up.revenue, c.tolerance,
                                  "worst case vs n p S(p)")});
  out.checks.push_back({closeness("comonotone_sandwich", comon.revenue, up.revenue,
                                  std::max(c.tolerance, resolution),
                                  "comonotone LP optimum vs uniform price")});
  out.checks.push_back({at_most("comonotone_optimum_guarantee", comon_wc.revenue, up.revenue,
                                c.tolerance, "worst case of the comonotone optimum")});
  out.checks.push_back({check_ic(mech, c.tolerance)});
  out.checks.push_back({check_ir(mech, c.tolerance)});
  out.mechanism = std::move(mech);
  out.distribution = lo.adversary;
}

void run_monotonicity(const ExperimentConfig& c, ExperimentOutcome& out) {
  const Distribution dist = c.build_distribution();
  Mechanism mech = source_mechanism(c, dist, out.results);
  if (c.distribution.type == "density_expr" && c.n >= 1 && c.levels.size() >= 3 &&
      !c.strict_only) {
    const Grid grid = c.grid();
    AuditReport mm = check_mcafee_mcmillan(density_on_box(c.distribution.density, grid), grid,
                                           c.tolerance);
    out.results["density_condition"] = mm.passed();
    out.checks.push_back({std::move(mm), false});
  }
  MonotonicityResult r = run_revenue_monotonicity_experiment(
      mech, dist, ShiftMap::OneStepUp(c.levels.size(), c.n), c.tolerance);
  out.results["revenue_before"] = r.revenue_before;
  out.results["revenue_after"] = r.revenue_after;
  if (r.repaired_before) {
    out.results["repaired_revenue_before"] = *r.repaired_before;
    out.results["repaired_revenue_after"] = *r.repaired_after;
  }
  out.results["basis"] = monotonicity_basis_name(r.basis);
  out.results["original_asserted"] = r.original_asserted;
  out.results["repaired_asserted"] = r.repaired_asserted;
  out.checks.push_back({std::move(r.audit)});
  out.checks.push_back({is_almost_deterministic(mech), false});
  out.mechanism = std::move(mech);
  out.distribution = dist;
}

void run_repair(const ExperimentConfig& c, ExperimentOutcome& out) {
  const Distribution dist = c.build_distribution();
  const Mechanism mech = source_mechanism(c, dist, out.results);
  const RepairRule rule = c.options.rule == "almost_deterministic"
                              ? RepairRule::kAlmostDeterministicLexMax
                              : RepairRule::kLexMax;
  RepairResult r = lmax_repair(mech, rule);
  json per_type = json::array();
  std::size_t singletons = 0;
  AuditReport agree("agrees_at_singletons", 0.0);
  AuditReport inside("in_subgradient_polytope", 1e-9);
  for (std::size_t k = 0; k < mech.size(); ++k) {
    per_type.push_back({{"v", mech.type(k).v},
                        {"singleton", static_cast<bool>(r.singleton[k])},
                        {"width", r.width[k]}});
    inside.count_checked();
    if (!SubgradientPolytope(mech, k).contains(r.mechanism.q(k), 1e-9)) {
      inside.add_violation({{mech.type(k)}, 0.0, "repaired allocation outside"});
    }
    if (!r.singleton[k]) continue;
    ++singletons;
    agree.count_checked();
    double d = std::abs(mech.t(k) - r.mechanism.t(k));
    for (int i = 0; i < mech.n(); ++i) d = std::max(d, std::abs(mech.q(k)[i] - r.mechanism.q(k)[i]));
    if (d > 0.0) agree.add_violation({{mech.type(k)}, d, "singleton type changed"});
  }
  out.results["rule"] = c.options.rule;
  out.results["changed"] = r.changed;
  out.results["singleton_types"] = singletons;
  out.results["types"] = std::move(per_type);
  out.results["revenue_before"] = expected_revenue(mech, dist);
  out.results["revenue_after"] = expected_revenue(r.mechanism, dist);
  out.checks.push_back({check_ic(r.mechanism, c.tolerance)});
  out.checks.push_back({check_ir(r.mechanism, c.tolerance)});
  out.checks.push_back({check_feasible_identical(r.mechanism, c.tolerance)});
  out.checks.push_back({check_object_nonbossy(r.mechanism, c.tolerance)});
  out.checks.push_back({utility_preserved(mech, r.mechanism, 1e-10)});
  out.checks.push_back({std::move(agree)});
  out.checks.push_back({std::move(inside)});
  if (rule == RepairRule::kAlmostDeterministicLexMax) {
    out.checks.push_back({is_almost_deterministic(r.mechanism)});
  }
  out.mechanism = std::move(r.mechanism);
  out.distribution = dist;
}

void run_deterministic(const ExperimentConfig& c, ExperimentOutcome& out) {
  const Distribution dist = c.build_distribution();
  const std::vector<TypePoint> types = c.types();
  DeterministicResult d = optimal_deterministic(types, dist, c.domain);
  out.results["revenue"] = d.revenue;
  out.results["menus_searched"] = d.menus_searched;
  out.results["optima"] = d.optima.size();
  out.results["bundles"] = d.bundles.size();
  out.results["candidate_prices"] = d.candidate_prices.size();
  if (c.options.compare_lp) {
    const OptimalResult lp = optimal_mechanism(types, dist, c.domain, lp_options(c));
    out.results["lp_revenue"] = lp.revenue;
    out.checks.push_back({at_most("deterministic_below_lp", d.revenue, lp.revenue, c.tolerance,
                                  "deterministic vs LP optimum")});
  }
  out.results["menu_space"] = d.menu_space;
  out.checks.push_back({at_most("exhaustive", std::abs(d.menu_space - static_cast<double>(d.menus_searched)), 0.0, 0.0,
                                "menus searched vs candidate menu space")});
  if (c.domain == Domain::kHeterogeneous && c.strict_only &&
      is_exchangeable(dist, 1e-12).passed()) {
    SymmetricDeterministicCertificate cert = certify_symmetric_deterministic(d, dist, c.tolerance);
    out.results["symmetric_optima"] = cert.symmetric_optima;
    out.results["rank_preserving_optima"] = cert.rank_preserving_optima;
    out.results["optima_truncated"] = d.optima_truncated;
    if (cert.constructed_revenue) {
      out.results["constructed_revenue"] = *cert.constructed_revenue;
      out.results["best_cell"] = cert.constructed->cell.to_string();
    }
    out.checks.push_back({std::move(cert.audit)});
  } else if (c.domain == Domain::kHeterogeneous) {
    std::size_t symmetric = 0;
    std::size_t rank_preserving = 0;
    for (const Mechanism& m : d.optima) {
      symmetric += is_symmetric(m, 0.0).passed();
      rank_preserving += is_rank_preserving(m).passed();
    }
    out.results["symmetric_optima"] = symmetric;
    out.results["rank_preserving_optima"] = rank_preserving;
  }
  out.checks.push_back({check_ic(d.mechanism, c.tolerance)});
  out.checks.push_back({check_ir(d.mechanism, c.tolerance)});
  out.mechanism = std::move(d.mechanism);
  out.distribution = dist;
}

json check_summary(const CheckOutcome& c) {
  return {{"check", c.report.check()},
          {"pass", c.report.passed()},
          {"asserted", c.asserted},
          {"checked", c.report.checked()},
          {"violation_count", c.report.violation_count()},
          {"max_violation", c.report.max_violation()}};
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw Error("cannot write '" + p.string() + "'");
  f << text;
  if (!f) throw Error("write failed for '" + p.string() + "'");
}

void write_dumps(const ExperimentOutcome& o, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  if (o.mechanism) write_file(dir / "mechanism.csv", to_csv(*o.mechanism));
  if (o.distribution) write_file(dir / "distribution.csv", to_csv(*o.distribution));
  if (o.failed_lp) write_file(dir / "failed.lp", to_lp_format(*o.failed_lp));
}

}  // namespace

ExperimentOutcome run_experiment(const ExperimentConfig& c) {
  ExperimentOutcome out;
  out.name = c.name;
  out.kind = c.kind;
  try {
    switch (c.kind) {
      case ExperimentKind::kSolve: run_solve(c, out); break;
      case ExperimentKind::kCertifyEquivalence: run_equivalence(c, out); break;
      case ExperimentKind::kCertifyTheorem1: run_theorem1(c, out); break;
      case ExperimentKind::kRobust: run_robust(c, out); break;
      case ExperimentKind::kMonotonicity: run_monotonicity(c, out); break;
      case ExperimentKind::kRepair: run_repair(c, out); break;
      case ExperimentKind::kDeterministic: run_deterministic(c, out); break;
    }
  } catch (const std::exception& e) {
    out.error = e.what();
    try {
      out.failed_lp = experiment_lp(c);
    } catch (const std::exception&) {
    }
  }
  return out;
}

LinearProgram experiment_lp(const ExperimentConfig& c) {
  const Distribution dist = c.build_distribution();
  const std::vector<TypePoint> types = c.types();
  switch (c.kind) {
    case ExperimentKind::kRobust: {
      const MarginalCdf g = average_marginal(dist);
      const UniformPrice up = optimal_uniform_price(g, c.n);
      return worst_case_lp(uniform_price_mechanism(types, up.price), g, false);
    }
    case ExperimentKind::kCertifyEquivalence:
    case ExperimentKind::kCertifyTheorem1:
      return mechanism_lp(types, dist, Domain::kHeterogeneous, true);
    default:
      return mechanism_lp(types, dist, c.domain, c.options.symmetric);
  }
}

json summary_json(const std::vector<ExperimentOutcome>& outcomes) {
  json list = json::array();
  bool all = true;
  for (const ExperimentOutcome& o : outcomes) {
    json checks = json::array();
    for (const CheckOutcome& c : o.checks) checks.push_back(check_summary(c));
    json e = {{"name", o.name},
              {"kind", experiment_kind_name(o.kind)},
              {"passed", o.passed()},
              {"checks", checks},
              {"results", o.results}};
    if (!o.error.empty()) e["error"] = o.error;
    all = all && o.passed();
    list.push_back(std::move(e));
  }
  if (outcomes.size() == 1) return rounded(list[0]);
  return rounded(json{{"passed", all}, {"experiments", list}});
}

json audits_json(const std::vector<ExperimentOutcome>& outcomes) {
  json out = json::object();
  for (const ExperimentOutcome& o : outcomes) {
    json list = json::array();
    for (const CheckOutcome& c : o.checks) {
      json a = to_json(c.report);
      a["asserted"] = c.asserted;
      list.push_back(std::move(a));
    }
    out[o.name] = std::move(list);
  }
  return rounded(out);
}

int run_all(std::vector<ExperimentConfig> configs, const RunOptions& opt) {
  std::vector<ExperimentOutcome> outcomes;
  for (ExperimentConfig& c : configs) {
    if (opt.tolerance) c.tolerance = *opt.tolerance;
    if (opt.seed) c.seed = *opt.seed;
    outcomes.push_back(run_experiment(c));
  }
  const std::filesystem::path dir(opt.out_dir);
  std::filesystem::create_directories(dir);
  write_file(dir / "summary.json", summary_json(outcomes).dump(2) + "\n");
  write_file(dir / "audits.json", audits_json(outcomes).dump(2) + "\n");
  bool all = true;
  for (const ExperimentOutcome& o : outcomes) {
    write_dumps(o, outcomes.size() == 1 ? dir : dir / o.name);
    all = all && o.passed();
  }
  return all ? 0 : 1;
}

}  // namespace mechlab
