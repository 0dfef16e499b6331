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

#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "xbsched/milp/model.hpp"

namespace xb::testing {

// Random bounded LP with a known feasible point, so the optimum exists.
// Roughly a third of the variables have no upper bound; objective
// coefficients on those are kept non-negative to stay bounded.
inline milp::MilpModel random_lp(std::mt19937_64& rng, int rows, int cols) {
  std::uniform_int_distribution<int> coef(-5, 5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  milp::MilpModel model;
  std::vector<double> x0(cols);
  for (int j = 0; j < cols; ++j) {
    const double lo = std::floor(unit(rng) * 3.0) - 1.0;
    const bool boxed = unit(rng) < 0.66;
    const double hi = boxed ? lo + 1.0 + std::floor(unit(rng) * 6.0) : milp::kInf;
    x0[j] = boxed ? lo + unit(rng) * (hi - lo) : lo + unit(rng) * 4.0;
    double c = coef(rng);
    if (!boxed) c = std::abs(c) + 0.5;
    model.add_variable("v" + std::to_string(j), lo, hi, false, c);
  }
  for (int i = 0; i < rows; ++i) {
    std::vector<milp::Term> terms;
    double act = 0.0;
    for (int j = 0; j < cols; ++j) {
      if (unit(rng) < 0.35) {
        const double a = coef(rng);
        if (a == 0.0) continue;
        terms.push_back({j, a});
        act += a * x0[j];
      }
    }
    if (terms.empty()) continue;
    const double r = unit(rng);
    if (r < 0.45) {
      model.add_constraint("r" + std::to_string(i), terms, milp::Relation::kLessEqual, std::ceil(act + unit(rng) * 3.0));
    } else if (r < 0.9) {
      model.add_constraint("r" + std::to_string(i), terms, milp::Relation::kGreaterEqual, std::floor(act - unit(rng) * 3.0));
    } else {
      model.add_constraint("r" + std::to_string(i), terms, milp::Relation::kEqual, act);
    }
  }
  return model;
}

// Small pure-integer program with boxed variables in [0, ub].
inline milp::MilpModel random_ip(std::mt19937_64& rng, int rows, int cols, int ub) {
  std::uniform_int_distribution<int> coef(-6, 6);
  std::uniform_int_distribution<int> val(0, ub);
  milp::MilpModel model;
  std::vector<int> x0(cols);
  for (int j = 0; j < cols; ++j) {
    x0[j] = val(rng);
    model.add_variable("z" + std::to_string(j), 0, ub, true, coef(rng));
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < rows; ++i) {
    std::vector<milp::Term> terms;
    double act = 0.0;
    for (int j = 0; j < cols; ++j) {
      if (unit(rng) < 0.6) {
        const int a = coef(rng);
        if (a == 0) continue;
        terms.push_back({j, static_cast<double>(a)});
        act += a * x0[j];
      }
    }
    if (terms.empty()) continue;
    const double slack = std::floor(unit(rng) * 4.0);
    if (unit(rng) < 0.5) {
      model.add_constraint("r" + std::to_string(i), terms, milp::Relation::kLessEqual, act + slack);
    } else {
      model.add_constraint("r" + std::to_string(i), terms, milp::Relation::kGreaterEqual, act - slack);
    }
  }
  return model;
}

// Exhaustive search over every integer point of a pure-integer model.
inline double brute_force_ip(const milp::MilpModel& model) {
  const int n = model.num_variables();
  std::vector<double> x(n);
  double best = std::numeric_limits<double>::infinity();
  std::function<void(int)> rec = [&](int j) {
    if (j == n) {
      if (milp::check_feasibility(model, x, 1e-9).empty()) {
        best = std::min(best, model.evaluate_objective(x));
      }
      return;
    }
    const auto& v = model.variable(j);
    for (double k = v.lower; k <= v.upper; k += 1.0) {
      x[j] = k;
      rec(j + 1);
    }
  };
  rec(0);
  return best;
}

}  // namespace xb::testing
