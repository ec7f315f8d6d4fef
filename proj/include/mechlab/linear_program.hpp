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

// General-form linear programs with bounded variables, reduced to the
// standard form of simplex.hpp.

#ifndef MECHLAB_LINEAR_PROGRAM_HPP_
#define MECHLAB_LINEAR_PROGRAM_HPP_

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "mechlab/simplex.hpp"

namespace mechlab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Sense { kLessEqual, kGreaterEqual, kEqual };

struct Term {
  int var;
  double coef;
};

struct Constraint {
  std::vector<Term> terms;
  Sense sense = Sense::kLessEqual;
  double rhs = 0.0;
  std::string name;
};

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = kInf;
  double objective = 0.0;
};

class LinearProgram {
 public:
  explicit LinearProgram(bool maximize = true) : maximize_(maximize) {}

  int add_variable(std::string name, double lower = 0.0, double upper = kInf,
                   double objective = 0.0);
  void set_objective(int var, double coef);
  // Returns the row index.
  std::size_t add_constraint(std::vector<Term> terms, Sense sense, double rhs,
                             std::string name = "");

  bool maximize() const { return maximize_; }
  void set_maximize(bool maximize) { maximize_ = maximize; }
  const std::vector<Variable>& variables() const { return vars_; }
  const std::vector<Constraint>& constraints() const { return rows_; }
  std::size_t num_variables() const { return vars_.size(); }
  std::size_t num_constraints() const { return rows_.size(); }

 private:
  bool maximize_;
  std::vector<Variable> vars_;
  std::vector<Constraint> rows_;
};

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> values;
  double objective = 0.0;
  // d objective / d rhs for each constraint row.
  std::vector<double> duals;
  // |b.y - c.x| on the standard form.
  double duality_gap = 0.0;
  // Largest bound or row violation of values.
  double primal_violation = 0.0;
  // Largest violation of dual feasibility on the standard form.
  double dual_violation = 0.0;
  std::size_t pivots = 0;

  bool optimal() const { return status == LpStatus::kOptimal; }
};

// Status is reported, never thrown. Throws only on malformed input
// (non-finite coefficients, unknown variable index, lower > upper).
LpSolution solve_lp(const LinearProgram& lp, const SimplexOptions& opt = {});

// CPLEX LP text format.
std::string to_lp_format(const LinearProgram& lp);

}  // namespace mechlab

#endif  // MECHLAB_LINEAR_PROGRAM_HPP_
