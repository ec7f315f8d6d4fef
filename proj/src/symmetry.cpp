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

#include "mechlab/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>

#include "mechlab/error.hpp"

namespace mechlab {

namespace {

void require_hetero(const Mechanism& mech, const char* what) {
  if (mech.domain() != Domain::kHeterogeneous) {
    throw Error(std::string(what) + ": heterogeneous domain required");
  }
}

struct Rows {
  std::vector<TypePoint> types;
  std::vector<std::vector<double>> q;
  std::vector<double> t;
};

// Sorts rows by type so that output order does not depend on input order.
Mechanism build_sorted(Domain domain, Rows rows) {
  std::vector<std::size_t> order(rows.types.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&rows](std::size_t a, std::size_t b) {
    return rows.types[a] < rows.types[b];
  });
  Rows out;
  for (std::size_t k : order) {
    out.types.push_back(std::move(rows.types[k]));
    out.q.push_back(std::move(rows.q[k]));
    out.t.push_back(rows.t[k]);
  }
  return Mechanism(domain, std::move(out.types), std::move(out.q),
                   std::move(out.t));
}

std::string perm_note(const Permutation& s) { return "s=" + s.to_string(); }

}  // namespace

AuditReport is_symmetric(const Mechanism& mech, double tol) {
  require_hetero(mech, "is_symmetric");
  AuditReport report("symmetric", tol);
  const auto perms = all_permutations(mech.n());
  for (std::size_t k = 0; k < mech.size(); ++k) {
    const TypePoint& v = mech.type(k);
    if (!v.is_strict()) continue;
    for (const Permutation& s : perms) {
      if (s.is_identity()) continue;
      report.count_checked();
      const TypePoint vs = apply_permutation(v, s);
      auto idx = mech.find(vs);
      if (!idx) {
        report.add_violation({{v, vs}, 0.0, "orbit incomplete, " + perm_note(s)});
        continue;
      }
      double worst = std::abs(mech.t(*idx) - mech.t(k));
      for (int i = 0; i < mech.n(); ++i) {
        worst = std::max(worst, std::abs(mech.q(*idx)[i] - mech.q(k)[s(i)]));
      }
      if (worst > tol) {
        report.add_violation({{v, vs}, worst, perm_note(s)});
      }
    }
  }
  return report;
}

AuditReport is_rank_preserving(const Mechanism& mech, double tol) {
  AuditReport report("rank_preserving", tol);
  const int n = mech.n();
  for (std::size_t k = 0; k < mech.size(); ++k) {
    const TypePoint& v = mech.type(k);
    if (!v.is_strict()) continue;
    const auto q = mech.q(k);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (!(v[i] > v[j])) continue;
        report.count_checked();
        if (q[i] < q[j] - tol) {
          report.add_violation({{v},
                                q[j] - q[i],
                                "q_" + std::to_string(i + 1) + " < q_" +
                                    std::to_string(j + 1)});
        }
      }
    }
  }
  return report;
}

Mechanism symmetric_extension(const Mechanism& identical) {
  const auto perms = all_permutations(identical.n());
  Rows rows;
  for (std::size_t k = 0; k < identical.size(); ++k) {
    const TypePoint& r = identical.type(k);
    if (!r.is_strict() || !r.is_sorted_decreasing()) continue;
    for (const Permutation& s : perms) {
      // v in D(s) with v^s = r.
      rows.types.push_back(apply_permutation(r, s.inverse()));
      rows.q.push_back(scatter(identical.q(k), s));
      rows.t.push_back(identical.t(k));
    }
  }
  if (rows.types.empty()) {
    throw Error("symmetric_extension: no strict sorted types");
  }
  return build_sorted(Domain::kHeterogeneous, std::move(rows));
}

Mechanism restrict_to_cell(const Mechanism& hetero, const Permutation& s) {
  require_hetero(hetero, "restrict_to_cell");
  Rows rows;
  for (std::size_t k = 0; k < hetero.size(); ++k) {
    const TypePoint& v = hetero.type(k);
    if (!v.is_strict() || cell_of(v) != s) continue;
    rows.types.push_back(apply_permutation(v, s));
    std::vector<double> q(hetero.n());
    for (int i = 0; i < hetero.n(); ++i) q[i] = hetero.q(k)[s(i)];
    rows.q.push_back(std::move(q));
    rows.t.push_back(hetero.t(k));
  }
  if (rows.types.empty()) {
    throw Error("restrict_to_cell: no types in cell " + s.to_string());
  }
  return build_sorted(Domain::kIdentical, std::move(rows));
}

CellExtension best_cell_extension(const Mechanism& hetero, const Distribution& dist) {
  require_hetero(hetero, "best_cell_extension");
  const std::map<Permutation, double> by_cell = revenue_by_cell(hetero, dist);
  std::optional<Permutation> best;
  double best_rev = 0.0;
  for (const Permutation& s : all_permutations(hetero.n())) {
    const auto it = by_cell.find(s);
    if (it == by_cell.end()) continue;
    if (!best || it->second > best_rev) {
      best = s;
      best_rev = it->second;
    }
  }
  if (!best) throw Error("best_cell_extension: no strict types");
  return {*best, best_rev, symmetric_extension(restrict_to_cell(hetero, *best))};
}

Mechanism relabel(const Mechanism& hetero, const Permutation& s) {
  require_hetero(hetero, "relabel");
  Rows rows;
  for (std::size_t k = 0; k < hetero.size(); ++k) {
    const TypePoint& v = hetero.type(k);
    const std::size_t at = hetero.index_of(apply_permutation(v, s));
    rows.types.push_back(v);
    rows.q.push_back(scatter(hetero.q(at), s));
    rows.t.push_back(hetero.t(at));
  }
  return Mechanism(Domain::kHeterogeneous, std::move(rows.types),
                   std::move(rows.q), std::move(rows.t));
}

Mechanism symmetrize(const Mechanism& hetero) {
  require_hetero(hetero, "symmetrize");
  const int n = hetero.n();
  const auto perms = all_permutations(n);
  const double count = static_cast<double>(perms.size());
  Rows reps;
  for (std::size_t k = 0; k < hetero.size(); ++k) {
    const TypePoint& r = hetero.type(k);
    if (!r.is_strict()) {
      throw Error("symmetrize: tied type " + r.to_string());
    }
    if (!r.is_sorted_decreasing()) continue;
    std::vector<double> q(n, 0.0);
    double t = 0.0;
    for (const Permutation& s : perms) {
      auto at = hetero.find(apply_permutation(r, s));
      if (!at) throw Error("symmetrize: orbit of " + r.to_string() + " incomplete");
      const auto qs = hetero.q(*at);
      for (int i = 0; i < n; ++i) q[i] += qs[s.inverse()(i)];
      t += hetero.t(*at);
    }
    for (double& x : q) x /= count;
    reps.types.push_back(r);
    reps.q.push_back(std::move(q));
    reps.t.push_back(t / count);
  }
  Mechanism averaged = symmetric_extension(
      Mechanism(Domain::kIdentical, std::move(reps.types), std::move(reps.q),
                std::move(reps.t)));
  if (averaged.size() != hetero.size()) {
    throw Error("symmetrize: type list is not a union of orbits");
  }
  return averaged;
}

Theorem1Certificate certify_theorem1(const Mechanism& mech, double tol) {
  Theorem1Certificate cert;
  cert.symmetric = is_symmetric(mech, tol);
  if (!cert.symmetric.passed()) {
    throw Error("certify_theorem1: mechanism is not symmetric");
  }
  cert.global_ic = check_ic(mech, tol);
  cert.rank_preserving = is_rank_preserving(mech, tol);
  std::vector<char> in_cell(mech.size(), 0);
  for (std::size_t k = 0; k < mech.size(); ++k) {
    const TypePoint& v = mech.type(k);
    in_cell[k] = v.is_strict() && v.is_sorted_decreasing();
  }
  cert.ic_on_identity_cell = check_ic_subset(mech, in_cell, tol, "ic_on_identity_cell");
  cert.certificate = AuditReport("theorem1", tol);
  cert.certificate.count_checked(2);

  const bool i = cert.global_ic.passed();
  const bool ii = cert.rank_preserving.passed() && cert.ic_on_identity_cell.passed();
  auto witnesses = [](const AuditReport& r) {
    return r.violations().empty() ? std::vector<TypePoint>{}
                                  : r.violations().front().witnesses;
  };
  if (i && !ii) {
    const AuditReport& bad = cert.rank_preserving.passed()
                                 ? cert.ic_on_identity_cell
                                 : cert.rank_preserving;
    cert.certificate.add_violation(
        {witnesses(bad), bad.max_violation(), "(i) holds but (ii) fails: " + bad.check()});
  }
  if (ii && !i) {
    cert.certificate.add_violation({witnesses(cert.global_ic),
                                    cert.global_ic.max_violation(),
                                    "(ii) holds but (i) fails"});
  }
  cert.certificate.add_note(std::string("global_ic=") + (i ? "pass" : "fail"));
  cert.certificate.add_note(std::string("rank_preserving=") +
                            (cert.rank_preserving.passed() ? "pass" : "fail"));
  cert.certificate.add_note(std::string("ic_on_identity_cell=") +
                            (cert.ic_on_identity_cell.passed() ? "pass" : "fail"));
  if (!i && !ii) {
    cert.certificate.add_note(
        cert.rank_preserving.passed() ? "failed hypothesis: ic_on_identity_cell"
                                      : "failed hypothesis: rank_preserving");
  }
  return cert;
}

Mechanism extend_to_ties(const Mechanism& strict_hetero, const Grid& grid) {
  require_hetero(strict_hetero, "extend_to_ties");
  if (grid.n() != strict_hetero.n()) throw Error("extend_to_ties: dimension mismatch");
  Rows rows;
  for (const TypePoint& v : enumerate_hetero(grid, false)) {
    auto own = strict_hetero.find(v);
    std::size_t src = 0;
    if (own) {
      src = *own;
    } else {
      if (v.is_strict()) {
        throw Error("extend_to_ties: strict type missing " + v.to_string());
      }
      double best = INFINITY;
      bool found = false;
      for (std::size_t k = 0; k < strict_hetero.size(); ++k) {
        const TypePoint& w = strict_hetero.type(k);
        if (!w.is_strict()) continue;
        double d = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) d = std::max(d, std::abs(v[i] - w[i]));
        if (d < best || (d == best && w < strict_hetero.type(src))) {
          best = d;
          src = k;
          found = true;
        }
      }
      if (!found) throw Error("extend_to_ties: no strict types");
    }
    rows.types.push_back(v);
    rows.q.emplace_back(strict_hetero.q(src).begin(), strict_hetero.q(src).end());
    rows.t.push_back(strict_hetero.t(src));
  }
  return Mechanism(Domain::kHeterogeneous, std::move(rows.types), std::move(rows.q),
                   std::move(rows.t));
}

Mechanism anti_rank_fixture(const std::vector<TypePoint>& strict_types) {
  std::vector<std::vector<double>> q;
  for (const TypePoint& v : strict_types) {
    if (v.size() != 2 || !v.is_strict()) throw Error("anti_rank_fixture: needs strict pairs");
    q.push_back(v[0] > v[1] ? std::vector<double>{0.0, 1.0} : std::vector<double>{1.0, 0.0});
  }
  return Mechanism(Domain::kHeterogeneous, strict_types, std::move(q),
                   std::vector<double>(strict_types.size(), 0.0));
}

}  // namespace mechlab
