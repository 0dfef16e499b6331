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

#include "xbsched/milp/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace xb::milp {

namespace {

constexpr double kFeasTol = 1e-9;
constexpr double kIntTol = 1e-6;

bool is_integral_value(double a) {
  return std::abs(a - std::round(a)) <= 1e-9 && std::abs(a) < 1e15;
}

}  // namespace

Propagator::Propagator(const MilpModel& model) : model_(model) {
  integral_row_.assign(model.num_constraints(), 0);
  for (int i = 0; i < model.num_constraints(); ++i) {
    const auto& c = model.constraint(i);
    bool ok = !c.terms.empty();
    for (const auto& t : c.terms) {
      if (!model.variable(t.var).is_integer || !is_integral_value(t.coef)) {
        ok = false;
        break;
      }
    }
    integral_row_[i] = ok ? 1 : 0;
  }
}

Domains Propagator::initial_domains() const {
  Domains d;
  const int n = model_.num_variables();
  const int m = model_.num_constraints();
  d.col_lo.resize(n);
  d.col_hi.resize(n);
  for (int j = 0; j < n; ++j) {
    const auto& v = model_.variable(j);
    d.col_lo[j] = v.lower;
    d.col_hi[j] = v.upper;
    if (v.is_integer) {
      if (std::isfinite(d.col_lo[j])) d.col_lo[j] = std::ceil(d.col_lo[j] - kIntTol);
      if (std::isfinite(d.col_hi[j])) d.col_hi[j] = std::floor(d.col_hi[j] + kIntTol);
    }
  }
  d.row_lo.resize(m);
  d.row_hi.resize(m);
  for (int i = 0; i < m; ++i) {
    const auto& c = model_.constraint(i);
    switch (c.relation) {
      case Relation::kLessEqual: d.row_lo[i] = -kInf; d.row_hi[i] = c.rhs; break;
      case Relation::kGreaterEqual: d.row_lo[i] = c.rhs; d.row_hi[i] = kInf; break;
      case Relation::kEqual: d.row_lo[i] = c.rhs; d.row_hi[i] = c.rhs; break;
    }
  }
  return d;
}

bool Propagator::propagate_row(int row, Domains& d, bool& changed) const {
  const auto& terms = model_.constraint(row).terms;
  double& lo = d.row_lo[row];
  double& hi = d.row_hi[row];

  if (integral_row_[row]) {
    double fixed = 0.0;
    std::int64_t g = 0;
    for (const auto& t : terms) {
      if (d.col_lo[t.var] == d.col_hi[t.var]) {
        fixed += t.coef * d.col_lo[t.var];
      } else {
        g = std::gcd(g, static_cast<std::int64_t>(std::llround(std::abs(t.coef))));
      }
    }
    if (g == 0) {
      if (fixed < lo - kFeasTol * std::max(1.0, std::abs(lo)) ||
          fixed > hi + kFeasTol * std::max(1.0, std::abs(hi))) {
        return false;
      }
    } else {
      const double gd = static_cast<double>(g);
      if (std::isfinite(lo)) {
        const double nl = fixed + gd * std::ceil((lo - fixed) / gd - 1e-9);
        if (nl > lo + 1e-9) { lo = nl; changed = true; }
      }
      if (std::isfinite(hi)) {
        const double nh = fixed + gd * std::floor((hi - fixed) / gd + 1e-9);
        if (nh < hi - 1e-9) { hi = nh; changed = true; }
      }
    }
  }

  // Finite parts of min/max activity and the number of infinite contributors.
  double min_fin = 0.0, max_fin = 0.0;
  int min_inf = 0, max_inf = 0;
  for (const auto& t : terms) {
    const double l = d.col_lo[t.var], u = d.col_hi[t.var];
    const double a = t.coef;
    const double cmin = a > 0 ? l : u;
    const double cmax = a > 0 ? u : l;
    if (std::isfinite(cmin)) min_fin += a * cmin; else ++min_inf;
    if (std::isfinite(cmax)) max_fin += a * cmax; else ++max_inf;
  }
  if (min_inf == 0 && min_fin > hi + kFeasTol * std::max(1.0, std::abs(hi))) return false;
  if (max_inf == 0 && max_fin < lo - kFeasTol * std::max(1.0, std::abs(lo))) return false;

  for (const auto& t : terms) {
    const int j = t.var;
    if (!model_.variable(j).is_integer) continue;
    const double a = t.coef;
    if (a == 0.0) continue;
    const double l = d.col_lo[j], u = d.col_hi[j];
    const double cmin = a > 0 ? l : u;
    const double cmax = a > 0 ? u : l;
    // Minimum / maximum activity of the other terms.
    double min_rest = kInf * -1.0, max_rest = kInf;
    if (std::isfinite(cmin)) {
      if (min_inf == 0) min_rest = min_fin - a * cmin;
    } else if (min_inf == 1) {
      min_rest = min_fin;
    }
    if (std::isfinite(cmax)) {
      if (max_inf == 0) max_rest = max_fin - a * cmax;
    } else if (max_inf == 1) {
      max_rest = max_fin;
    }
    double new_lo = l, new_hi = u;
    if (std::isfinite(hi) && std::isfinite(min_rest)) {
      const double b = (hi - min_rest) / a;
      if (a > 0) new_hi = std::min(new_hi, b); else new_lo = std::max(new_lo, b);
    }
    if (std::isfinite(lo) && std::isfinite(max_rest)) {
      const double b = (lo - max_rest) / a;
      if (a > 0) new_lo = std::max(new_lo, b); else new_hi = std::min(new_hi, b);
    }
    if (std::isfinite(new_lo)) new_lo = std::ceil(new_lo - kIntTol);
    if (std::isfinite(new_hi)) new_hi = std::floor(new_hi + kIntTol);
    if (new_lo > new_hi) return false;
    if (new_lo > l) { d.col_lo[j] = new_lo; changed = true; }
    if (new_hi < u) { d.col_hi[j] = new_hi; changed = true; }
  }
  return true;
}

bool Propagator::propagate(Domains& d, int max_passes) const {
  for (int pass = 0; pass < max_passes; ++pass) {
    bool changed = false;
    for (int i = 0; i < model_.num_constraints(); ++i) {
      if (!propagate_row(i, d, changed)) return false;
    }
    if (!changed) break;
  }
  return true;
}

}  // namespace xb::milp
