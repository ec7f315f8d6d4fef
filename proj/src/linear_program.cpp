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

#include "mechlab/linear_program.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "mechlab/error.hpp"

namespace mechlab {

int LinearProgram::add_variable(std::string name, double lower, double upper,
                                double objective) {
  if (std::isnan(lower) || std::isnan(upper) || lower > upper ||
      lower == kInf || upper == -kInf) {
    throw Error("lp: bad bounds for variable " + name);
  }
  if (!std::isfinite(objective)) throw Error("lp: non-finite objective for " + name);
  vars_.push_back({std::move(name), lower, upper, objective});
  return static_cast<int>(vars_.size()) - 1;
}

void LinearProgram::set_objective(int var, double coef) {
  if (var < 0 || var >= static_cast<int>(vars_.size())) {
    throw Error("lp: unknown variable index");
  }
  if (!std::isfinite(coef)) throw Error("lp: non-finite objective coefficient");
  vars_[var].objective = coef;
}

std::size_t LinearProgram::add_constraint(std::vector<Term> terms, Sense sense,
                                          double rhs, std::string name) {
  for (const Term& t : terms) {
    if (t.var < 0 || t.var >= static_cast<int>(vars_.size())) {
      throw Error("lp: constraint references unknown variable");
    }
    if (!std::isfinite(t.coef)) throw Error("lp: non-finite coefficient");
  }
  if (!std::isfinite(rhs)) throw Error("lp: non-finite right-hand side");
  rows_.push_back({std::move(terms), sense, rhs, std::move(name)});
  return rows_.size() - 1;
}

namespace {

// x_j = offset + sign_a * col_a (+ sign_b * col_b when split).
struct VarMap {
  double offset = 0.0;
  long col_a = -1;
  double sign_a = 1.0;
  long col_b = -1;
};

// Which original row a standard row came from, and with which sign.
struct RowOrigin {
  long row;  // -1 for a variable upper-bound row
  double sign;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const SimplexOptions& opt) {
  const auto& vars = lp.variables();
  const auto& rows = lp.constraints();
  std::vector<VarMap> map(vars.size());
  std::size_t cols = 0;
  std::vector<std::pair<std::size_t, double>> bound_rows;
  for (std::size_t j = 0; j < vars.size(); ++j) {
    const Variable& v = vars[j];
    if (std::isfinite(v.lower)) {
      map[j] = {v.lower, static_cast<long>(cols++), 1.0, -1};
      if (std::isfinite(v.upper)) bound_rows.emplace_back(j, v.upper - v.lower);
    } else if (std::isfinite(v.upper)) {
      map[j] = {v.upper, static_cast<long>(cols++), -1.0, -1};
    } else {
      map[j] = {0.0, static_cast<long>(cols), 1.0, static_cast<long>(cols + 1)};
      cols += 2;
    }
  }

  std::size_t nrows = bound_rows.size();
  for (const Constraint& r : rows) nrows += r.sense == Sense::kEqual ? 2 : 1;

  StandardForm sf;
  sf.rows = nrows;
  sf.cols = cols;
  sf.a.assign(nrows * cols, 0.0);
  sf.b.assign(nrows, 0.0);
  sf.c.assign(cols, 0.0);
  std::vector<RowOrigin> origin;
  origin.reserve(nrows);

  const double obj_sign = lp.maximize() ? 1.0 : -1.0;
  for (std::size_t j = 0; j < vars.size(); ++j) {
    const double c = obj_sign * vars[j].objective;
    sf.c[map[j].col_a] += c * map[j].sign_a;
    if (map[j].col_b >= 0) sf.c[map[j].col_b] -= c;
  }

  std::size_t next = 0;
  auto emit = [&](const Constraint& r, double sign, long from) {
    double constant = 0.0;
    for (const Term& t : r.terms) {
      const VarMap& vm = map[t.var];
      constant += t.coef * vm.offset;
      sf.at(next, vm.col_a) += sign * t.coef * vm.sign_a;
      if (vm.col_b >= 0) sf.at(next, vm.col_b) -= sign * t.coef;
    }
    sf.b[next] = sign * (r.rhs - constant);
    origin.push_back({from, sign});
    ++next;
  };
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Constraint& r = rows[i];
    if (r.sense != Sense::kGreaterEqual) emit(r, 1.0, static_cast<long>(i));
    if (r.sense != Sense::kLessEqual) emit(r, -1.0, static_cast<long>(i));
  }
  for (const auto& [j, width] : bound_rows) {
    sf.at(next, map[j].col_a) = 1.0;
    sf.b[next] = width;
    origin.push_back({-1, 1.0});
    ++next;
  }

  const SimplexResult res = solve_standard(sf, opt);

  LpSolution sol;
  sol.status = res.status;
  sol.pivots = res.pivots;
  sol.values.assign(vars.size(), 0.0);
  for (std::size_t j = 0; j < vars.size(); ++j) {
    const VarMap& vm = map[j];
    double x = vm.offset + vm.sign_a * res.x[vm.col_a];
    if (vm.col_b >= 0) x -= res.x[vm.col_b];
    sol.values[j] = x;
  }
  sol.duals.assign(rows.size(), 0.0);
  for (std::size_t i = 0; i < nrows; ++i) {
    if (origin[i].row >= 0) {
      sol.duals[origin[i].row] += obj_sign * origin[i].sign * res.y[i];
    }
  }

  double obj = 0.0;
  for (std::size_t j = 0; j < vars.size(); ++j) obj += vars[j].objective * sol.values[j];
  sol.objective = obj;

  double viol = 0.0;
  for (std::size_t j = 0; j < vars.size(); ++j) {
    viol = std::max(viol, vars[j].lower - sol.values[j]);
    viol = std::max(viol, sol.values[j] - vars[j].upper);
  }
  for (const Constraint& r : rows) {
    double lhs = 0.0;
    for (const Term& t : r.terms) lhs += t.coef * sol.values[t.var];
    if (r.sense != Sense::kGreaterEqual) viol = std::max(viol, lhs - r.rhs);
    if (r.sense != Sense::kLessEqual) viol = std::max(viol, r.rhs - lhs);
  }
  sol.primal_violation = viol;

  double by = 0.0;
  double cx = 0.0;
  for (std::size_t i = 0; i < nrows; ++i) by += sf.b[i] * res.y[i];
  for (std::size_t j = 0; j < cols; ++j) cx += sf.c[j] * res.x[j];
  sol.duality_gap = std::abs(by - cx);
  double dual_viol = 0.0;
  for (std::size_t i = 0; i < nrows; ++i) dual_viol = std::max(dual_viol, -res.y[i]);
  std::vector<double> aty(cols, 0.0);
  for (std::size_t i = 0; i < nrows; ++i) {
    if (res.y[i] == 0.0) continue;
    const double* row = &sf.a[i * cols];
    for (std::size_t j = 0; j < cols; ++j) aty[j] += row[j] * res.y[i];
  }
  for (std::size_t j = 0; j < cols; ++j) {
    dual_viol = std::max(dual_viol, sf.c[j] - aty[j]);
  }
  sol.dual_violation = dual_viol;
  return sol;
}

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string var_name(const LinearProgram& lp, int j) {
  const std::string& n = lp.variables()[j].name;
  return n.empty() ? "x" + std::to_string(j) : n;
}

void write_linear(std::ostringstream& out, const LinearProgram& lp,
                  const std::vector<Term>& terms) {
  if (terms.empty()) {
    out << " 0 " << var_name(lp, 0);
    return;
  }
  for (const Term& t : terms) {
    out << (t.coef < 0 ? " - " : " + ") << num(std::abs(t.coef)) << " "
        << var_name(lp, t.var);
  }
}

}  // namespace

std::string to_lp_format(const LinearProgram& lp) {
  std::ostringstream out;
  out << (lp.maximize() ? "Maximize\n" : "Minimize\n") << " obj:";
  std::vector<Term> obj;
  for (std::size_t j = 0; j < lp.num_variables(); ++j) {
    if (lp.variables()[j].objective != 0.0) {
      obj.push_back({static_cast<int>(j), lp.variables()[j].objective});
    }
  }
  if (lp.num_variables() > 0) write_linear(out, lp, obj);
  out << "\nSubject To\n";
  for (std::size_t i = 0; i < lp.num_constraints(); ++i) {
    const Constraint& r = lp.constraints()[i];
    out << " " << (r.name.empty() ? "c" + std::to_string(i) : r.name) << ":";
    write_linear(out, lp, r.terms);
    out << (r.sense == Sense::kLessEqual      ? " <= "
            : r.sense == Sense::kGreaterEqual ? " >= "
                                              : " = ")
        << num(r.rhs) << "\n";
  }
  out << "Bounds\n";
  for (std::size_t j = 0; j < lp.num_variables(); ++j) {
    const Variable& v = lp.variables()[j];
    const std::string name = var_name(lp, static_cast<int>(j));
    if (v.lower == -kInf && v.upper == kInf) {
      out << " " << name << " free\n";
    } else {
      out << " " << (v.lower == -kInf ? "-inf" : num(v.lower)) << " <= " << name
          << " <= " << (v.upper == kInf ? "+inf" : num(v.upper)) << "\n";
    }
  }
  out << "End\n";
  return out.str();
}

}  // namespace mechlab
