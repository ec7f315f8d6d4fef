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

// Direct-revelation mechanisms on a finite type list, their audits, and the
// menu (taxation principle) representation.

#ifndef MECHLAB_MECHANISM_HPP_
#define MECHLAB_MECHANISM_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "mechlab/audit.hpp"
#include "mechlab/distribution.hpp"
#include "mechlab/typespace.hpp"

namespace mechlab {

inline constexpr double kDefaultAuditTolerance = 1e-9;

// Allocation probabilities q(v) in [0,1]^n and payment t(v) per type.
// Feasibility for the identical domain (q decreasing) is audited by
// check_feasible_identical, not enforced here, so that restrictions of
// heterogeneous mechanisms can be represented and flagged.
class Mechanism {
 public:
  Mechanism(Domain domain, std::vector<TypePoint> types,
            std::vector<std::vector<double>> allocations,
            std::vector<double> payments);

  Domain domain() const { return domain_; }
  int n() const { return n_; }
  std::size_t size() const { return types_.size(); }
  const std::vector<TypePoint>& types() const { return types_; }
  const TypePoint& type(std::size_t k) const { return types_[k]; }

  std::span<const double> q(std::size_t k) const {
    return {q_.data() + k * n_, static_cast<std::size_t>(n_)};
  }
  double t(std::size_t k) const { return t_[k]; }
  const std::vector<double>& payments() const { return t_; }

  std::optional<std::size_t> find(const TypePoint& v) const;
  // Throws "unknown type" when v is not in the type list.
  std::size_t index_of(const TypePoint& v) const;

  // v . q(k) - t(k): payoff of type v from the outcome assigned to type k.
  double payoff(const TypePoint& v, std::size_t k) const;

 private:
  Domain domain_;
  int n_;
  std::vector<TypePoint> types_;
  std::vector<double> q_;
  std::vector<double> t_;
  std::map<TypePoint, std::size_t> index_;
};

struct MenuItem {
  std::vector<double> allocation;
  double price = 0.0;
};

// Always holds the null item (0, ..., 0) at price 0 in position 0.
class Menu {
 public:
  explicit Menu(int n);
  Menu(int n, std::vector<MenuItem> items);  // null item is prepended

  int n() const { return n_; }
  const std::vector<MenuItem>& items() const { return items_; }
  void add(MenuItem item);

 private:
  int n_;
  std::vector<MenuItem> items_;
};

enum class TieBreak {
  kLowestIndex,     // first utility maximizer in menu order
  kSellerFavorable  // highest price among maximizers, then lowest index
};

// u(v) = v . q(v) - t(v). Throws if v is not a type of the mechanism.
double utility(const Mechanism& mech, const TypePoint& v);

// Every ordered pair (v, v') with u(v) < v . q(v') - t(v') - tol.
AuditReport check_ic(const Mechanism& mech, double tol = kDefaultAuditTolerance);
// IC restricted to the types whose index satisfies the predicate mask.
AuditReport check_ic_subset(const Mechanism& mech,
                            const std::vector<char>& include,
                            double tol = kDefaultAuditTolerance,
                            const std::string& check = "ic");
AuditReport check_ir(const Mechanism& mech, double tol = kDefaultAuditTolerance);
// Every (v, i) with q_i(v) < q_{i+1}(v) - tol. Requires the identical tag.
AuditReport check_feasible_identical(const Mechanism& mech,
                                     double tol = kDefaultAuditTolerance);

// Sum of f(v) t(v). Every type carrying positive weight must belong to the
// mechanism.
double expected_revenue(const Mechanism& mech, const Distribution& dist);

// Revenue collected on each cell of strict types.
std::map<Permutation, double> revenue_by_cell(const Mechanism& mech,
                                              const Distribution& dist);

// Each type picks a payoff-maximizing item. The result is IC and IR.
Mechanism menu_to_mechanism(const Menu& menu, const std::vector<TypePoint>& types,
                            Domain domain,
                            TieBreak tie_break = TieBreak::kLowestIndex);

// Distinct (allocation, payment) outcomes, with the null item first.
Menu mechanism_to_menu(const Mechanism& mech);

// CSV with header v_1..v_n,q_1..q_n,t; values at 12 significant digits.
std::string to_csv(const Mechanism& mech);
Mechanism mechanism_from_csv(const std::string& text, Domain domain);
nlohmann::json to_json(const Mechanism& mech);
Mechanism mechanism_from_json(const nlohmann::json& j);

std::string to_csv(const Distribution& dist);

// %.12g rendering used by all text outputs.
std::string format_number(double x);

}  // namespace mechlab

#endif  // MECHLAB_MECHANISM_HPP_
