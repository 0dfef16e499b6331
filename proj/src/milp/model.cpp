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

#include "xbsched/milp/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace xb::milp {

VarId MilpModel::add_variable(Variable v) {
  variables_.push_back(std::move(v));
  return num_variables() - 1;
}

VarId MilpModel::add_variable(std::string name, double lower, double upper,
                              bool is_integer, double objective) {
  return add_variable(Variable{std::move(name), lower, upper, is_integer,
                               objective, 0});
}

RowId MilpModel::add_constraint(Constraint c) {
  constraints_.push_back(std::move(c));
  return num_constraints() - 1;
}

RowId MilpModel::add_constraint(std::string name, std::vector<Term> terms,
                                Relation relation, double rhs) {
  return add_constraint(
      Constraint{std::move(name), std::move(terms), relation, rhs});
}

std::size_t MilpModel::num_nonzeros() const {
  std::size_t nnz = 0;
  for (const auto& c : constraints_) nnz += c.terms.size();
  return nnz;
}

double MilpModel::evaluate_objective(const std::vector<double>& values) const {
  double obj = objective_offset_;
  for (std::size_t j = 0; j < variables_.size(); ++j) {
    obj += variables_[j].objective * values[j];
  }
  return obj;
}

double MilpModel::row_activity(RowId row,
                               const std::vector<double>& values) const {
  double act = 0.0;
  for (const auto& t : constraints_[row].terms) act += t.coef * values[t.var];
  return act;
}

std::vector<std::string> MilpModel::validate() const {
  std::vector<std::string> problems;
  for (std::size_t j = 0; j < variables_.size(); ++j) {
    const auto& v = variables_[j];
    if (std::isnan(v.lower) || std::isnan(v.upper) || v.lower > v.upper) {
      problems.push_back("variable '" + v.name + "' has inconsistent bounds");
    }
    if (v.lower == kInf || v.upper == -kInf) {
      problems.push_back("variable '" + v.name + "' has an infinite bound on the wrong side");
    }
    if (!std::isfinite(v.objective)) {
      problems.push_back("variable '" + v.name + "' has a non-finite objective coefficient");
    }
  }
  for (const auto& c : constraints_) {
    if (!std::isfinite(c.rhs)) {
      problems.push_back("row '" + c.name + "' has a non-finite right-hand side");
    }
    for (const auto& t : c.terms) {
      if (t.var < 0 || t.var >= num_variables()) {
        problems.push_back("row '" + c.name + "' references unknown variable " +
                           std::to_string(t.var));
      } else if (!std::isfinite(t.coef)) {
        problems.push_back("row '" + c.name + "' has a non-finite coefficient");
      }
    }
  }
  return problems;
}

std::string Violation::describe(const MilpModel& model) const {
  std::ostringstream os;
  switch (kind) {
    case Kind::kBound:
      os << "bound of variable '" << model.variable(index).name << "'";
      break;
    case Kind::kRow:
      os << "row '" << model.constraint(index).name << "'";
      break;
    case Kind::kIntegrality:
      os << "integrality of variable '" << model.variable(index).name << "'";
      break;
  }
  os << " violated by " << amount;
  return os.str();
}

std::vector<Violation> check_feasibility(const MilpModel& model,
                                         const std::vector<double>& values,
                                         double tolerance) {
  std::vector<Violation> out;
  if (values.size() != static_cast<std::size_t>(model.num_variables())) {
    out.push_back({Violation::Kind::kBound, -1, kInf});
    return out;
  }
  for (int j = 0; j < model.num_variables(); ++j) {
    const auto& v = model.variable(j);
    const double x = values[j];
    const double viol = std::max(v.lower - x, x - v.upper);
    if (viol > tolerance) out.push_back({Violation::Kind::kBound, j, viol});
    if (v.is_integer) {
      const double frac = std::abs(x - std::round(x));
      if (frac > tolerance) out.push_back({Violation::Kind::kIntegrality, j, frac});
    }
  }
  for (int i = 0; i < model.num_constraints(); ++i) {
    const auto& c = model.constraint(i);
    const double act = model.row_activity(i, values);
    double viol = 0.0;
    switch (c.relation) {
      case Relation::kLessEqual: viol = act - c.rhs; break;
      case Relation::kGreaterEqual: viol = c.rhs - act; break;
      case Relation::kEqual: viol = std::abs(act - c.rhs); break;
    }
    if (viol > tolerance) out.push_back({Violation::Kind::kRow, i, viol});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Violation& a, const Violation& b) { return a.amount > b.amount; });
  return out;
}

double max_violation(const MilpModel& model, const std::vector<double>& values) {
  auto v = check_feasibility(model, values, 0.0);
  return v.empty() ? 0.0 : v.front().amount;
}

}  // namespace xb::milp
