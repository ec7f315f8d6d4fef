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

#include "mechlab/mechanism.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "mechlab/error.hpp"

namespace mechlab {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Ties in the seller-favorable rule are payoffs within this distance.
constexpr double kPayoffTie = 1e-12;

}  // namespace

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x == 0.0 ? 0.0 : x);
  return buf;
}

Mechanism::Mechanism(Domain domain, std::vector<TypePoint> types,
                     std::vector<std::vector<double>> allocations,
                     std::vector<double> payments)
    : domain_(domain),
      n_(types.empty() ? 0 : static_cast<int>(types.front().size())),
      types_(std::move(types)),
      t_(std::move(payments)) {
  if (types_.empty()) throw Error("mechanism: empty type list");
  if (allocations.size() != types_.size() || t_.size() != types_.size()) {
    throw Error("mechanism: types, allocations and payments differ in length");
  }
  q_.reserve(types_.size() * n_);
  for (std::size_t k = 0; k < types_.size(); ++k) {
    if (static_cast<int>(types_[k].size()) != n_ ||
        static_cast<int>(allocations[k].size()) != n_) {
      throw Error("mechanism: inconsistent dimension at " +
                  types_[k].to_string());
    }
    if (domain_ == Domain::kIdentical && !types_[k].is_sorted_decreasing()) {
      throw Error("mechanism: identical-domain type not decreasing " +
                  types_[k].to_string());
    }
    for (double x : allocations[k]) {
      if (!(x >= 0.0 && x <= 1.0)) {
        throw Error("mechanism: allocation outside [0,1] at " +
                    types_[k].to_string());
      }
      q_.push_back(x);
    }
    if (!std::isfinite(t_[k])) {
      throw Error("mechanism: non-finite payment at " + types_[k].to_string());
    }
    if (!index_.emplace(types_[k], k).second) {
      throw Error("mechanism: duplicate type " + types_[k].to_string());
    }
  }
}

std::optional<std::size_t> Mechanism::find(const TypePoint& v) const {
  auto it = index_.find(v);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Mechanism::index_of(const TypePoint& v) const {
  auto it = index_.find(v);
  if (it == index_.end()) throw Error("unknown type " + v.to_string());
  return it->second;
}

double Mechanism::payoff(const TypePoint& v, std::size_t k) const {
  return dot(v.values(), q(k)) - t_[k];
}

Menu::Menu(int n) : n_(n) {
  items_.push_back({std::vector<double>(n, 0.0), 0.0});
}

Menu::Menu(int n, std::vector<MenuItem> items) : Menu(n) {
  for (MenuItem& item : items) add(std::move(item));
}

void Menu::add(MenuItem item) {
  if (static_cast<int>(item.allocation.size()) != n_) {
    throw Error("menu: item dimension mismatch");
  }
  for (double x : item.allocation) {
    if (!(x >= 0.0 && x <= 1.0)) throw Error("menu: allocation outside [0,1]");
  }
  if (!std::isfinite(item.price)) throw Error("menu: non-finite price");
  items_.push_back(std::move(item));
}

double utility(const Mechanism& mech, const TypePoint& v) {
  return mech.payoff(v, mech.index_of(v));
}

AuditReport check_ic_subset(const Mechanism& mech,
                            const std::vector<char>& include, double tol,
                            const std::string& check) {
  AuditReport report(check, tol);
  const std::size_t size = mech.size();
  for (std::size_t a = 0; a < size; ++a) {
    if (!include[a]) continue;
    const TypePoint& v = mech.type(a);
    const double truthful = mech.payoff(v, a);
    for (std::size_t b = 0; b < size; ++b) {
      if (b == a || !include[b]) continue;
      report.count_checked();
      const double deviation = mech.payoff(v, b);
      if (truthful < deviation - tol) {
        report.add_violation({{v, mech.type(b)},
                              deviation - truthful,
                              "misreport gains " +
                                  format_number(deviation - truthful)});
      }
    }
  }
  return report;
}

AuditReport check_ic(const Mechanism& mech, double tol) {
  return check_ic_subset(mech, std::vector<char>(mech.size(), 1), tol);
}

AuditReport check_ir(const Mechanism& mech, double tol) {
  AuditReport report("ir", tol);
  for (std::size_t k = 0; k < mech.size(); ++k) {
    report.count_checked();
    const double u = mech.payoff(mech.type(k), k);
    if (u < -tol) {
      report.add_violation({{mech.type(k)}, -u, "negative utility"});
    }
  }
  return report;
}

AuditReport check_feasible_identical(const Mechanism& mech, double tol) {
  if (mech.domain() != Domain::kIdentical) {
    throw Error("check_feasible_identical: identical domain tag required");
  }
  AuditReport report("feasible_identical", tol);
  for (std::size_t k = 0; k < mech.size(); ++k) {
    const auto q = mech.q(k);
    for (int i = 0; i + 1 < mech.n(); ++i) {
      report.count_checked();
      if (q[i] < q[i + 1] - tol) {
        report.add_violation({{mech.type(k)},
                              q[i + 1] - q[i],
                              "q_" + std::to_string(i + 1) + " < q_" +
                                  std::to_string(i + 2)});
      }
    }
  }
  return report;
}

double expected_revenue(const Mechanism& mech, const Distribution& dist) {
  if (dist.n() != mech.n() || dist.domain() != mech.domain()) {
    throw Error("expected_revenue: domain mismatch");
  }
  double total = 0.0;
  for (std::size_t k = 0; k < dist.size(); ++k) {
    const double w = dist.weights()[k];
    if (w == 0.0) continue;
    auto idx = mech.find(dist.types()[k]);
    if (!idx) {
      throw Error("expected_revenue: domain mismatch, mechanism lacks " +
                  dist.types()[k].to_string());
    }
    total += w * mech.t(*idx);
  }
  return total;
}

std::map<Permutation, double> revenue_by_cell(const Mechanism& mech,
                                              const Distribution& dist) {
  if (mech.domain() != Domain::kHeterogeneous) {
    throw Error("revenue_by_cell: heterogeneous domain required");
  }
  std::map<Permutation, double> out;
  for (const Permutation& s : all_permutations(mech.n())) out[s] = 0.0;
  for (std::size_t k = 0; k < dist.size(); ++k) {
    const TypePoint& v = dist.types()[k];
    const double w = dist.weights()[k];
    if (w == 0.0 || !v.is_strict()) continue;
    out[cell_of(v)] += w * mech.t(mech.index_of(v));
  }
  return out;
}

Mechanism menu_to_mechanism(const Menu& menu, const std::vector<TypePoint>& types,
                            Domain domain, TieBreak tie_break) {
  const auto& items = menu.items();
  std::vector<std::vector<double>> q;
  std::vector<double> t;
  q.reserve(types.size());
  t.reserve(types.size());
  for (const TypePoint& v : types) {
    if (static_cast<int>(v.size()) != menu.n()) {
      throw Error("menu_to_mechanism: dimension mismatch");
    }
    std::size_t best = 0;
    double best_u = dot(v.values(), items[0].allocation) - items[0].price;
    for (std::size_t k = 1; k < items.size(); ++k) {
      const double u = dot(v.values(), items[k].allocation) - items[k].price;
      const bool better =
          tie_break == TieBreak::kLowestIndex
              ? u > best_u
              : (u > best_u + kPayoffTie ||
                 (u >= best_u - kPayoffTie && items[k].price > items[best].price));
      if (better) {
        best = k;
        best_u = u;
      }
    }
    q.push_back(items[best].allocation);
    t.push_back(items[best].price);
  }
  return Mechanism(domain, types, std::move(q), std::move(t));
}

Menu mechanism_to_menu(const Mechanism& mech) {
  Menu menu(mech.n());
  std::map<std::pair<std::vector<double>, double>, bool> seen;
  seen[{menu.items()[0].allocation, 0.0}] = true;
  for (std::size_t k = 0; k < mech.size(); ++k) {
    std::vector<double> a(mech.q(k).begin(), mech.q(k).end());
    if (seen.emplace(std::make_pair(a, mech.t(k)), true).second) {
      menu.add({std::move(a), mech.t(k)});
    }
  }
  return menu;
}

std::string to_csv(const Mechanism& mech) {
  std::ostringstream out;
  const int n = mech.n();
  for (int i = 0; i < n; ++i) out << "v_" << i + 1 << ",";
  for (int i = 0; i < n; ++i) out << "q_" << i + 1 << ",";
  out << "t\n";
  for (std::size_t k = 0; k < mech.size(); ++k) {
    for (int i = 0; i < n; ++i) out << format_number(mech.type(k)[i]) << ",";
    for (int i = 0; i < n; ++i) out << format_number(mech.q(k)[i]) << ",";
    out << format_number(mech.t(k)) << "\n";
  }
  return out.str();
}

Mechanism mechanism_from_csv(const std::string& text, Domain domain) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw Error("mechanism csv: missing header");
  std::size_t columns = 1;
  for (char c : line) columns += (c == ',');
  if (columns < 3 || columns % 2 == 0) {
    throw Error("mechanism csv: header must be v_1..v_n,q_1..q_n,t");
  }
  const std::size_t n = (columns - 1) / 2;
  std::vector<TypePoint> types;
  std::vector<std::vector<double>> q;
  std::vector<double> t;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::vector<double> fields;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      try {
        fields.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw Error("mechanism csv: bad number on row " + std::to_string(row));
      }
    }
    if (fields.size() != columns) {
      throw Error("mechanism csv: wrong field count on row " +
                  std::to_string(row));
    }
    types.emplace_back(std::vector<double>(fields.begin(), fields.begin() + n));
    q.emplace_back(fields.begin() + n, fields.begin() + 2 * n);
    t.push_back(fields.back());
  }
  return Mechanism(domain, std::move(types), std::move(q), std::move(t));
}

nlohmann::json to_json(const Mechanism& mech) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t k = 0; k < mech.size(); ++k) {
    rows.push_back({{"v", mech.type(k).v},
                    {"q", std::vector<double>(mech.q(k).begin(), mech.q(k).end())},
                    {"t", mech.t(k)}});
  }
  return {{"domain_tag", domain_name(mech.domain())},
          {"n", mech.n()},
          {"types", rows}};
}

Mechanism mechanism_from_json(const nlohmann::json& j) {
  const Domain domain = parse_domain(j.at("domain_tag").get<std::string>());
  std::vector<TypePoint> types;
  std::vector<std::vector<double>> q;
  std::vector<double> t;
  for (const auto& row : j.at("types")) {
    types.emplace_back(row.at("v").get<std::vector<double>>());
    q.push_back(row.at("q").get<std::vector<double>>());
    t.push_back(row.at("t").get<double>());
  }
  return Mechanism(domain, std::move(types), std::move(q), std::move(t));
}

std::string to_csv(const Distribution& dist) {
  std::ostringstream out;
  for (int i = 0; i < dist.n(); ++i) out << "v_" << i + 1 << ",";
  out << "weight\n";
  for (std::size_t k = 0; k < dist.size(); ++k) {
    for (int i = 0; i < dist.n(); ++i) {
      out << format_number(dist.types()[k][i]) << ",";
    }
    out << format_number(dist.weights()[k]) << "\n";
  }
  return out.str();
}

}  // namespace mechlab
