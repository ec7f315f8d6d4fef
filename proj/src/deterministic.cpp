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

#include "mechlab/deterministic.hpp"

#include <cmath>
#include <set>

#include "mechlab/error.hpp"
#include "mechlab/symmetry.hpp"

namespace mechlab {

std::vector<std::vector<double>> deterministic_bundles(int n, Domain domain) {
  std::vector<std::vector<double>> out;
  if (domain == Domain::kIdentical) {
    for (int k = 1; k <= n; ++k) {
      std::vector<double> a(n, 0.0);
      for (int i = 0; i < k; ++i) a[i] = 1.0;
      out.push_back(std::move(a));
    }
    return out;
  }
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<double> a(n, 0.0);
    for (int i = 0; i < n; ++i) a[i] = (mask >> i) & 1u ? 1.0 : 0.0;
    out.push_back(std::move(a));
  }
  return out;
}

namespace {

struct Choice {
  std::size_t item;  // 0 = null, else bundle index + 1
  double price;
};

}  // namespace

DeterministicResult optimal_deterministic(const std::vector<TypePoint>& types,
                                          const Distribution& dist, Domain domain,
                                          const DeterministicOptions& opt) {
  if (types.empty()) throw Error("optimal_deterministic: empty type list");
  const int n = static_cast<int>(types.front().size());
  if (n > 3) throw Error("optimal_deterministic: instance too large (n > 3)");
  const auto bundles = deterministic_bundles(n, domain);
  const std::size_t nb = bundles.size();
  const std::size_t nt = types.size();

  std::vector<double> value(nt * nb);
  std::set<double> cand;
  for (std::size_t k = 0; k < nt; ++k) {
    for (std::size_t b = 0; b < nb; ++b) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += types[k][i] * bundles[b][i];
      value[k * nb + b] = s;
      cand.insert(s);
    }
  }
  const std::vector<double> prices(cand.begin(), cand.end());
  const double menus = std::pow(static_cast<double>(prices.size() + 1),
                                static_cast<double>(nb));
  if (menus * nt * nb > opt.max_work) {
    throw Error("optimal_deterministic: instance too large for exhaustive search");
  }
  std::vector<double> w(nt);
  for (std::size_t k = 0; k < nt; ++k) w[k] = dist.weight_of(types[k]);

  auto choose = [&](const std::vector<std::size_t>& menu, std::size_t k) {
    Choice best{0, 0.0};
    double best_u = 0.0;
    for (std::size_t b = 0; b < nb; ++b) {
      if (menu[b] == 0) continue;
      const double p = prices[menu[b] - 1];
      const double u = value[k * nb + b] - p;
      const bool better = u > best_u + opt.tie_tol ||
                          (u >= best_u - opt.tie_tol && p > best.price);
      if (better) {
        best = {b + 1, p};
        best_u = u;
      }
    }
    return best;
  };

  std::vector<std::size_t> menu(nb, 0);
  std::vector<std::vector<std::size_t>> best_menus;
  double best_rev = -INFINITY;
  std::size_t searched = 0;
  bool truncated = false;
  while (true) {
    ++searched;
    double rev = 0.0;
    for (std::size_t k = 0; k < nt; ++k) {
      if (w[k] != 0.0) rev += w[k] * choose(menu, k).price;
    }
    if (rev > best_rev + opt.tie_tol) {
      best_rev = rev;
      best_menus.clear();
      truncated = false;
      best_menus.push_back(menu);
    } else if (rev >= best_rev - opt.tie_tol) {
      if (best_menus.size() < opt.max_optima) {
        best_menus.push_back(menu);
      } else {
        truncated = true;
      }
    }
    std::size_t pos = 0;
    while (pos < nb && ++menu[pos] == prices.size() + 1) menu[pos++] = 0;
    if (pos == nb) break;
  }

  std::vector<Mechanism> optima;
  std::set<std::pair<std::vector<std::size_t>, std::vector<double>>> seen;
  for (const auto& m : best_menus) {
    std::vector<std::vector<double>> q;
    std::vector<double> t;
    std::vector<std::size_t> items;
    for (std::size_t k = 0; k < nt; ++k) {
      const Choice c = choose(m, k);
      items.push_back(c.item);
      q.push_back(c.item == 0 ? std::vector<double>(n, 0.0) : bundles[c.item - 1]);
      t.push_back(c.price);
    }
    if (!seen.insert({items, t}).second) continue;
    optima.emplace_back(domain, types, std::move(q), std::move(t));
  }
  Mechanism first = optima.front();
  const double rev = expected_revenue(first, dist);
  return {std::move(first), rev,     std::move(optima), truncated,
          searched,         menus,   bundles,           prices};
}

SymmetricDeterministicCertificate certify_symmetric_deterministic(
    const DeterministicResult& result, const Distribution& dist, double tol) {
  SymmetricDeterministicCertificate out;
  out.audit = AuditReport("symmetric_deterministic", tol);
  const Mechanism* source = nullptr;
  for (const Mechanism& m : result.optima) {
    const bool sym = is_symmetric(m, 0.0).passed();
    const bool rp = is_rank_preserving(m, 0.0).passed();
    out.symmetric_optima += sym;
    out.rank_preserving_optima += rp;
    if (rp && source == nullptr) source = &m;
    if (sym) {
      out.audit.count_checked();
      if (!rp) {
        out.audit.add_violation({{}, 0.0, "symmetric optimum is not rank preserving"});
      }
    }
  }
  if (result.optima_truncated) out.audit.add_note("optimum list truncated");
  if (source == nullptr) {
    out.audit.add_note("no rank-preserving optimum");
  } else {
    CellExtension ext = best_cell_extension(*source, dist);
    const Mechanism& s = ext.mechanism;
    const double rev = expected_revenue(s, dist);
    out.constructed_revenue = rev;
    out.audit.add_note("best cell " + ext.cell.to_string());
    auto expect = [&](bool ok, const std::string& what) {
      out.audit.count_checked();
      if (!ok) out.audit.add_violation({{}, 0.0, "constructed mechanism " + what});
    };
    expect(check_ic(s, tol).passed(), "is not IC");
    expect(check_ir(s, tol).passed(), "is not IR");
    expect(is_symmetric(s, 0.0).passed(), "is not symmetric");
    bool det = true;
    for (std::size_t k = 0; k < s.size(); ++k) {
      for (double x : s.q(k)) det = det && (x == 0.0 || x == 1.0);
    }
    expect(det, "is not deterministic");
    out.audit.count_checked();
    if (rev < result.revenue - tol) {
      out.audit.add_violation({{}, result.revenue - rev,
                               "constructed revenue " + format_number(rev) + " below optimum " +
                                   format_number(result.revenue)});
    }
    out.audit.count_checked();
    if (rev > result.revenue + tol) {
      out.audit.add_violation({{}, rev - result.revenue,
                               "constructed revenue exceeds the searched optimum"});
    }
    out.constructed = std::move(ext);
  }
  out.audit.count_checked();
  const bool has_rp = out.rank_preserving_optima > 0;
  const bool has_sym = out.symmetric_optima > 0 || (out.constructed && out.audit.passed());
  if (has_rp != has_sym) {
    out.audit.add_violation({{}, 0.0, has_rp ? "rank-preserving optimum without symmetric one"
                                             : "symmetric optimum without rank-preserving one"});
  }
  return out;
}

}  // namespace mechlab
