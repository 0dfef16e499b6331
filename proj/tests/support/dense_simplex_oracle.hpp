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

// Textbook two-phase dense tableau simplex with Bland's rule. Test-only
// oracle; shares no code with the library's revised simplex.

#include <cmath>
#include <limits>
#include <vector>

#include "xbsched/milp/model.hpp"

namespace xb::testing {

struct OracleResult {
  enum class Status { kOptimal, kInfeasible, kUnbounded } status;
  double objective = 0.0;
};

// Every variable must have a finite lower bound.
inline OracleResult dense_simplex(const milp::MilpModel& model) {
  using milp::Relation;
  const int n = model.num_variables();
  struct Row {
    std::vector<double> a;
    Relation rel;
    double rhs;
  };
  std::vector<Row> rows;
  std::vector<double> lb(n);
  double obj_shift = model.objective_offset();
  for (int j = 0; j < n; ++j) {
    lb[j] = model.variable(j).lower;
    obj_shift += model.variable(j).objective * lb[j];
  }
  for (const auto& c : model.constraints()) {
    Row r{std::vector<double>(n, 0.0), c.relation, c.rhs};
    for (const auto& t : c.terms) r.a[t.var] += t.coef;
    for (int j = 0; j < n; ++j) r.rhs -= r.a[j] * lb[j];
    rows.push_back(std::move(r));
  }
  for (int j = 0; j < n; ++j) {
    const double ub = model.variable(j).upper;
    if (std::isfinite(ub)) {
      Row r{std::vector<double>(n, 0.0), Relation::kLessEqual, ub - lb[j]};
      r.a[j] = 1.0;
      rows.push_back(std::move(r));
    }
  }
  for (auto& r : rows) {
    if (r.rhs < 0) {
      for (auto& v : r.a) v = -v;
      r.rhs = -r.rhs;
      if (r.rel == Relation::kLessEqual) r.rel = Relation::kGreaterEqual;
      else if (r.rel == Relation::kGreaterEqual) r.rel = Relation::kLessEqual;
    }
  }
  const int m = static_cast<int>(rows.size());
  int num_slack = 0, num_art = 0;
  for (const auto& r : rows) {
    if (r.rel != Relation::kEqual) ++num_slack;
    if (r.rel != Relation::kLessEqual) ++num_art;
  }
  const int cols = n + num_slack + num_art;
  std::vector<std::vector<double>> t(m, std::vector<double>(cols + 1, 0.0));
  std::vector<int> basis(m);
  std::vector<bool> artificial(cols, false);
  int s = n, a = n + num_slack;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) t[i][j] = rows[i].a[j];
    t[i][cols] = rows[i].rhs;
    if (rows[i].rel == Relation::kLessEqual) {
      t[i][s] = 1.0;
      basis[i] = s++;
    } else if (rows[i].rel == Relation::kGreaterEqual) {
      t[i][s++] = -1.0;
      t[i][a] = 1.0;
      artificial[a] = true;
      basis[i] = a++;
    } else {
      t[i][a] = 1.0;
      artificial[a] = true;
      basis[i] = a++;
    }
  }

  constexpr double eps = 1e-10;
  auto pivot = [&](int r, int c) {
    const double p = t[r][c];
    for (auto& v : t[r]) v /= p;
    for (int i = 0; i < m; ++i) {
      if (i == r || t[i][c] == 0.0) continue;
      const double f = t[i][c];
      for (int j = 0; j <= cols; ++j) t[i][j] -= f * t[r][j];
    }
    basis[r] = c;
  };
  // Returns false when unbounded.
  auto run = [&](const std::vector<double>& cost, const std::vector<bool>& allowed) {
    while (true) {
      int enter = -1;
      for (int j = 0; j < cols && enter < 0; ++j) {
        if (!allowed[j]) continue;
        double d = cost[j];
        for (int i = 0; i < m; ++i) d -= cost[basis[i]] * t[i][j];
        if (d < -eps) enter = j;
      }
      if (enter < 0) return true;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i) {
        if (t[i][enter] > eps) {
          const double ratio = t[i][cols] / t[i][enter];
          if (ratio < best - eps || (ratio <= best + eps && leave >= 0 && basis[i] < basis[leave])) {
            best = ratio;
            leave = i;
          }
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  };

  std::vector<bool> all(cols, true);
  if (num_art > 0) {
    std::vector<double> c1(cols, 0.0);
    for (int j = 0; j < cols; ++j) c1[j] = artificial[j] ? 1.0 : 0.0;
    run(c1, all);
    double infeas = 0.0;
    for (int i = 0; i < m; ++i)
      if (artificial[basis[i]]) infeas += t[i][cols];
    if (infeas > 1e-7) return {OracleResult::Status::kInfeasible, 0.0};
    for (int i = 0; i < m; ++i) {
      if (!artificial[basis[i]]) continue;
      for (int j = 0; j < cols; ++j) {
        if (!artificial[j] && std::abs(t[i][j]) > 1e-9) {
          pivot(i, j);
          break;
        }
      }
    }
  }
  std::vector<double> c2(cols, 0.0);
  for (int j = 0; j < n; ++j) c2[j] = model.variable(j).objective;
  std::vector<bool> allowed(cols, true);
  for (int j = 0; j < cols; ++j) allowed[j] = !artificial[j];
  if (!run(c2, allowed)) return {OracleResult::Status::kUnbounded, 0.0};
  double obj = obj_shift;
  for (int i = 0; i < m; ++i)
    if (basis[i] < n) obj += c2[basis[i]] * t[i][cols];
  return {OracleResult::Status::kOptimal, obj};
}

}  // namespace xb::testing
