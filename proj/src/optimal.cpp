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

#include "mechlab/optimal.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <tuple>

#include "mechlab/error.hpp"
#include "mechlab/symmetry.hpp"

namespace mechlab {

namespace {

// Truth type reps[a]^perms[p] reporting into block b.
struct Deviation {
  std::size_t a, b, p;
  friend auto operator<=>(const Deviation&, const Deviation&) = default;
};

struct Model {
  Domain domain = Domain::kHeterogeneous;
  bool symmetric = false;
  int n = 0;
  std::vector<TypePoint> reps;
  std::vector<double> weight;
  std::vector<Permutation> perms;
  // perms applied to each rep, cached.
  std::vector<std::vector<TypePoint>> images;

  int qv(std::size_t b, int i) const { return static_cast<int>(b * (n + 1) + i); }
  int uv(std::size_t b) const { return static_cast<int>(b * (n + 1) + n); }
  std::size_t num_deviations() const {
    return reps.size() * reps.size() * perms.size() - reps.size();
  }
};

bool trivial(const Model& m, const Deviation& d) {
  return d.a == d.b && m.perms[d.p].is_identity();
}

void finish_model(Model& m) {
  m.perms = m.symmetric ? all_permutations(m.n)
                        : std::vector<Permutation>{Permutation::Identity(m.n)};
  m.images.assign(m.reps.size(), {});
  for (std::size_t a = 0; a < m.reps.size(); ++a) {
    for (const Permutation& s : m.perms) {
      m.images[a].push_back(apply_permutation(m.reps[a], s));
    }
  }
}

LinearProgram base_lp(const Model& m) {
  LinearProgram lp(true);
  for (std::size_t b = 0; b < m.reps.size(); ++b) {
    const std::string tag = std::to_string(b);
    for (int i = 0; i < m.n; ++i) {
      const bool capped = m.domain != Domain::kIdentical || i == 0;
      lp.add_variable("q" + tag + "_" + std::to_string(i + 1), 0.0,
                      capped ? 1.0 : kInf, m.weight[b] * m.reps[b][i]);
    }
    lp.add_variable("u" + tag, 0.0, kInf, -m.weight[b]);
  }
  if (m.domain == Domain::kIdentical) {
    for (std::size_t b = 0; b < m.reps.size(); ++b) {
      for (int i = 0; i + 1 < m.n; ++i) {
        lp.add_constraint({{m.qv(b, i + 1), 1.0}, {m.qv(b, i), -1.0}},
                          Sense::kLessEqual, 0.0,
                          "mono" + std::to_string(b) + "_" + std::to_string(i + 1));
      }
    }
  }
  return lp;
}

void add_ic_row(LinearProgram& lp, const Model& m, const Deviation& d) {
  const TypePoint& x = m.images[d.a][d.p];
  const TypePoint& s = m.reps[d.b];
  std::vector<Term> terms;
  if (d.a != d.b) {
    terms.push_back({m.uv(d.b), 1.0});
    terms.push_back({m.uv(d.a), -1.0});
  }
  for (int i = 0; i < m.n; ++i) {
    const double c = x[i] - s[i];
    if (c != 0.0) terms.push_back({m.qv(d.b, i), c});
  }
  lp.add_constraint(std::move(terms), Sense::kLessEqual, 0.0,
                    "ic" + std::to_string(d.a) + "_" + std::to_string(d.b) + "_" +
                        std::to_string(d.p));
}

double violation(const Model& m, const std::vector<double>& x, const Deviation& d) {
  const TypePoint& img = m.images[d.a][d.p];
  const TypePoint& s = m.reps[d.b];
  double v = x[m.uv(d.b)] - x[m.uv(d.a)];
  for (int i = 0; i < m.n; ++i) v += (img[i] - s[i]) * x[m.qv(d.b, i)];
  return v;
}

std::vector<Deviation> all_deviations(const Model& m) {
  std::vector<Deviation> out;
  for (std::size_t a = 0; a < m.reps.size(); ++a) {
    for (std::size_t b = 0; b < m.reps.size(); ++b) {
      for (std::size_t p = 0; p < m.perms.size(); ++p) {
        Deviation d{a, b, p};
        if (!trivial(m, d)) out.push_back(d);
      }
    }
  }
  return out;
}

std::size_t distinct_levels(const Model& m) {
  std::set<double> levels;
  for (const TypePoint& v : m.reps) levels.insert(v.v.begin(), v.v.end());
  return levels.size();
}

// Pairs one level step apart in a single coordinate.
std::set<Deviation> neighbour_deviations(const Model& m) {
  std::set<double> level_set;
  for (const TypePoint& v : m.reps) level_set.insert(v.v.begin(), v.v.end());
  const std::vector<double> levels(level_set.begin(), level_set.end());
  auto index = [&levels](double x) {
    return static_cast<int>(std::lower_bound(levels.begin(), levels.end(), x) -
                            levels.begin());
  };
  std::map<std::vector<int>, std::size_t> by_index;
  std::vector<std::vector<int>> idx(m.reps.size());
  for (std::size_t a = 0; a < m.reps.size(); ++a) {
    for (int i = 0; i < m.n; ++i) idx[a].push_back(index(m.reps[a][i]));
    by_index[idx[a]] = a;
  }
  std::set<Deviation> out;
  for (std::size_t a = 0; a < m.reps.size(); ++a) {
    for (int i = 0; i < m.n; ++i) {
      for (int step : {-1, 1}) {
        std::vector<int> j = idx[a];
        j[i] += step;
        auto it = by_index.find(j);
        if (it != by_index.end()) out.insert({a, it->second, 0});
      }
    }
  }
  return out;
}

struct Solved {
  LpSolution lp;
  std::size_t ic_rows = 0;
  std::size_t rounds = 0;
};

LpSolution solve_checked(const LinearProgram& lp, const SimplexOptions& opt) {
  LpSolution sol = solve_lp(lp, opt);
  if (!sol.optimal()) {
    throw Error(std::string("mechanism LP not solved: ") + lp_status_name(sol.status));
  }
  constexpr double kCertificateTol = 1e-7;
  if (sol.primal_violation > kCertificateTol || sol.dual_violation > kCertificateTol ||
      sol.duality_gap > kCertificateTol) {
    throw Error("mechanism LP optimum failed verification: primal " +
                format_number(sol.primal_violation) + ", dual " +
                format_number(sol.dual_violation) + ", gap " +
                format_number(sol.duality_gap));
  }
  return sol;
}

Solved solve_model(const Model& m, const OptimalOptions& opt) {
  IcMode mode = opt.ic_mode;
  if (mode == IcMode::kAuto) {
    mode = distinct_levels(m) >= 12 || m.num_deviations() > kMaxFullIcRows
               ? IcMode::kGenerated
               : IcMode::kFull;
  }
  Solved out;
  if (mode == IcMode::kFull) {
    LinearProgram lp = base_lp(m);
    for (const Deviation& d : all_deviations(m)) add_ic_row(lp, m, d);
    out.ic_rows = m.num_deviations();
    out.lp = solve_checked(lp, opt.simplex);
    out.rounds = 1;
    return out;
  }
  std::set<Deviation> active = neighbour_deviations(m);
  const std::vector<Deviation> every = all_deviations(m);
  while (true) {
    LinearProgram lp = base_lp(m);
    for (const Deviation& d : active) add_ic_row(lp, m, d);
    out.lp = solve_checked(lp, opt.simplex);
    out.ic_rows = active.size();
    ++out.rounds;
    // Most violated deviations per truth type.
    std::vector<std::vector<std::pair<double, Deviation>>> worst(m.reps.size());
    for (const Deviation& d : every) {
      const double v = violation(m, out.lp.values, d);
      if (v > opt.generation_tol && !active.count(d)) {
        worst[d.a].push_back({v, d});
      }
    }
    bool added = false;
    for (auto& list : worst) {
      std::sort(list.begin(), list.end(), [](const auto& x, const auto& y) {
        return x.first > y.first || (x.first == y.first && x.second < y.second);
      });
      for (std::size_t k = 0; k < list.size() && k < opt.cuts_per_type; ++k) {
        active.insert(list[k].second);
        added = true;
      }
    }
    if (!added) return out;
  }
}

struct Outcome {
  std::vector<double> q;
  double t;
};

std::vector<Outcome> extract(const Model& m, const std::vector<double>& x) {
  std::vector<Outcome> out;
  for (std::size_t b = 0; b < m.reps.size(); ++b) {
    Outcome o;
    o.q.resize(m.n);
    double value = 0.0;
    for (int i = 0; i < m.n; ++i) {
      o.q[i] = std::clamp(x[m.qv(b, i)], 0.0, 1.0);
      value += m.reps[b][i] * o.q[i];
    }
    o.t = value - std::max(0.0, x[m.uv(b)]);
    out.push_back(std::move(o));
  }
  return out;
}

// u of type v from outcome o.
double value_of(const TypePoint& v, const Outcome& o) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * o.q[i];
  return s - o.t;
}

// Best item of the menu for v; the null outcome is item zero.
Outcome best_item(const TypePoint& v, const std::vector<Outcome>& menu) {
  Outcome best{std::vector<double>(v.size(), 0.0), 0.0};
  double best_u = 0.0;
  for (const Outcome& o : menu) {
    const double u = value_of(v, o);
    if (u > best_u) {
      best_u = u;
      best = o;
    }
  }
  return best;
}

double weight_at(const Distribution& dist, const TypePoint& v) {
  return dist.weight_of(v);
}

void check_support(const std::vector<TypePoint>& types, const Distribution& dist) {
  std::set<TypePoint> have(types.begin(), types.end());
  if (have.size() != types.size()) throw Error("optimal: duplicate types");
  for (std::size_t k = 0; k < dist.size(); ++k) {
    if (dist.weights()[k] > 0.0 && !have.count(dist.types()[k])) {
      throw Error("optimal: positive-weight type " + dist.types()[k].to_string() +
                  " outside the type list");
    }
  }
}

OptimalResult package(Mechanism mech, const Distribution& dist, Solved solved,
                      bool reduced) {
  const double rev = expected_revenue(mech, dist);
  OptimalResult r{std::move(mech), rev, solved.lp.objective, std::move(solved.lp),
                  solved.ic_rows, solved.rounds, reduced};
  return r;
}

Model plain_model(const std::vector<TypePoint>& types, const Distribution& dist,
                  Domain domain) {
  Model m;
  m.domain = domain;
  m.n = static_cast<int>(types.front().size());
  m.reps = types;
  for (const TypePoint& v : types) {
    if (static_cast<int>(v.size()) != m.n) throw Error("optimal: dimension mismatch");
    if (domain == Domain::kIdentical && !v.is_sorted_decreasing()) {
      throw Error("optimal: identical-domain type not decreasing " + v.to_string());
    }
    m.weight.push_back(weight_at(dist, v));
  }
  finish_model(m);
  return m;
}

Model symmetric_model(const std::vector<TypePoint>& types, const Distribution& dist) {
  std::set<TypePoint> have(types.begin(), types.end());
  std::map<TypePoint, double> orbit_weight;
  const int n = static_cast<int>(types.front().size());
  const auto perms = all_permutations(n);
  for (const TypePoint& v : types) {
    if (!v.is_strict()) throw Error("optimal_symmetric: tied type " + v.to_string());
    for (const Permutation& s : perms) {
      if (!have.count(apply_permutation(v, s))) {
        throw Error("optimal_symmetric: orbit of " + v.to_string() + " incomplete");
      }
    }
    orbit_weight[sorted_decreasing(v)] += weight_at(dist, v);
  }
  Model m;
  m.domain = Domain::kHeterogeneous;
  m.symmetric = true;
  m.n = n;
  for (const auto& [rep, w] : orbit_weight) {
    m.reps.push_back(rep);
    m.weight.push_back(w);
  }
  finish_model(m);
  return m;
}

Model keep_support(const Model& full) {
  Model m;
  m.domain = full.domain;
  m.symmetric = full.symmetric;
  m.n = full.n;
  for (std::size_t b = 0; b < full.reps.size(); ++b) {
    if (full.weight[b] > 0.0) {
      m.reps.push_back(full.reps[b]);
      m.weight.push_back(full.weight[b]);
    }
  }
  finish_model(m);
  return m;
}

bool has_zero_weight(const Model& m) {
  return std::any_of(m.weight.begin(), m.weight.end(), [](double w) { return w == 0.0; });
}

}  // namespace

OptimalResult optimal_mechanism(const std::vector<TypePoint>& types,
                                const Distribution& dist, Domain domain,
                                const OptimalOptions& opt) {
  if (types.empty()) throw Error("optimal_mechanism: empty type list");
  check_support(types, dist);
  const Model full = plain_model(types, dist, domain);
  const bool reduce = opt.support_reduction && has_zero_weight(full);
  const Model m = reduce ? keep_support(full) : full;
  Solved solved = solve_model(m, opt);
  const std::vector<Outcome> sol = extract(m, solved.lp.values);

  std::map<TypePoint, Outcome> by_type;
  for (std::size_t b = 0; b < m.reps.size(); ++b) by_type.emplace(m.reps[b], sol[b]);
  std::vector<std::vector<double>> q;
  std::vector<double> t;
  for (const TypePoint& v : types) {
    auto it = by_type.find(v);
    Outcome o = it != by_type.end() ? it->second : best_item(v, sol);
    q.push_back(std::move(o.q));
    t.push_back(o.t);
  }
  return package(Mechanism(domain, types, std::move(q), std::move(t)), dist,
                 std::move(solved), reduce);
}

OptimalResult optimal_symmetric_mechanism(const std::vector<TypePoint>& types,
                                          const Distribution& dist,
                                          const OptimalOptions& opt) {
  if (types.empty()) throw Error("optimal_symmetric_mechanism: empty type list");
  check_support(types, dist);
  const Model full = symmetric_model(types, dist);
  const bool reduce = opt.support_reduction && has_zero_weight(full);
  const Model m = reduce ? keep_support(full) : full;
  Solved solved = solve_model(m, opt);
  const std::vector<Outcome> sol = extract(m, solved.lp.values);

  // The menu of a symmetric mechanism is closed under relabelling objects.
  std::vector<Outcome> menu;
  for (const Outcome& o : sol) {
    for (const Permutation& s : m.perms) menu.push_back({scatter(o.q, s), o.t});
  }
  std::map<TypePoint, Outcome> by_rep;
  for (std::size_t b = 0; b < m.reps.size(); ++b) by_rep.emplace(m.reps[b], sol[b]);
  std::vector<TypePoint> reps;
  std::vector<std::vector<double>> q;
  std::vector<double> t;
  for (const TypePoint& r : full.reps) {
    auto it = by_rep.find(r);
    Outcome o = it != by_rep.end() ? it->second : best_item(r, menu);
    reps.push_back(r);
    q.push_back(std::move(o.q));
    t.push_back(o.t);
  }
  Mechanism sorted(Domain::kIdentical, std::move(reps), std::move(q), std::move(t));
  return package(symmetric_extension(sorted), dist, std::move(solved), reduce);
}

LinearProgram mechanism_lp(const std::vector<TypePoint>& types,
                           const Distribution& dist, Domain domain,
                           bool symmetric) {
  if (types.empty()) throw Error("mechanism_lp: empty type list");
  const Model m = symmetric ? symmetric_model(types, dist)
                            : plain_model(types, dist, domain);
  LinearProgram lp = base_lp(m);
  for (const Deviation& d : all_deviations(m)) add_ic_row(lp, m, d);
  return lp;
}

}  // namespace mechlab
