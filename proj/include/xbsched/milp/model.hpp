// Copyright 2026 The xbsched Authors
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

#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace xb::milp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

using VarId = int;
using RowId = int;

enum class Relation { kLessEqual, kEqual, kGreaterEqual };

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = kInf;
  bool is_integer = false;
  double objective = 0.0;
  // Higher priority variables are branched on first. Ties fall back to
  // most-fractional, then lowest index.
  int branch_priority = 0;
};

struct Term {
  VarId var;
  double coef;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;
  Relation relation = Relation::kLessEqual;
  double rhs = 0.0;
};

// A minimization mixed-integer linear program. Rows are kept sparse; the
// model is a plain value type and is never mutated by the solvers.
class MilpModel {
 public:
  VarId add_variable(Variable v);
  VarId add_variable(std::string name, double lower, double upper,
                     bool is_integer, double objective);
  RowId add_constraint(Constraint c);
  RowId add_constraint(std::string name, std::vector<Term> terms,
                       Relation relation, double rhs);

  void set_objective_offset(double offset) { objective_offset_ = offset; }
  double objective_offset() const { return objective_offset_; }

  int num_variables() const { return static_cast<int>(variables_.size()); }
  int num_constraints() const { return static_cast<int>(constraints_.size()); }
  std::size_t num_nonzeros() const;

  const Variable& variable(VarId id) const { return variables_.at(id); }
  Variable& mutable_variable(VarId id) { return variables_.at(id); }
  const Constraint& constraint(RowId id) const { return constraints_.at(id); }
  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }

  // Objective value of a full assignment, including the constant offset.
  double evaluate_objective(const std::vector<double>& values) const;
  double row_activity(RowId row, const std::vector<double>& values) const;

  // Empty when the model is well formed; otherwise one message per defect
  // (inconsistent bounds, dangling variable references, non-finite data).
  std::vector<std::string> validate() const;

 private:
  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
  double objective_offset_ = 0.0;
};

struct Violation {
  enum class Kind { kBound, kRow, kIntegrality };
  Kind kind;
  int index;  // variable or row id
  double amount;
  std::string describe(const MilpModel& model) const;
};

// Re-checks an assignment row by row. Returns the violations whose magnitude
// exceeds `tolerance`, worst first.
std::vector<Violation> check_feasibility(const MilpModel& model,
                                         const std::vector<double>& values,
                                         double tolerance = 1e-6);

double max_violation(const MilpModel& model, const std::vector<double>& values);

}  // namespace xb::milp
