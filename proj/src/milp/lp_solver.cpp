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

#include "xbsched/milp/lp_solver.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>

namespace xb::milp {

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
    case LpStatus::kIterationLimit: return "iteration_limit";
    case LpStatus::kNumericalFailure: return "numerical_failure";
  }
  return "unknown";
}

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Vec = Eigen::VectorXd;

void row_bounds_from_relation(const Constraint& c, double& lo, double& hi) {
  switch (c.relation) {
    case Relation::kLessEqual: lo = -kInf; hi = c.rhs; break;
    case Relation::kGreaterEqual: lo = c.rhs; hi = kInf; break;
    case Relation::kEqual: lo = c.rhs; hi = c.rhs; break;
  }
}

}  // namespace

struct LpSolver::Impl {
  LpOptions opt;
  int n = 0;
  int m = 0;
  int total = 0;

  // Row-scaled constraint matrix, column major.
  std::vector<int> col_start;
  std::vector<int> row_index;
  std::vector<double> col_value;
  std::vector<double> row_scale;

  std::vector<double> cost;
  std::vector<double> model_lb, model_ub;  // original (unscaled) bounds
  std::vector<double> lb, ub;              // working bounds, logicals scaled
  double offset = 0.0;

  // Unscaled copy for residual checks.
  std::vector<Constraint> rows;

  std::vector<BasisStatus> status;
  std::vector<int> head;
  std::vector<int> pos;
  std::vector<double> x;

  Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>> lu;
  struct Eta {
    int r;
    double pivot;
    std::vector<int> idx;
    std::vector<double> val;
  };
  std::vector<Eta> etas;

  explicit Impl(const MilpModel& model, LpOptions o) : opt(o) {
    n = model.num_variables();
    m = model.num_constraints();
    total = n + m;
    rows = model.constraints();
    offset = model.objective_offset();

    row_scale.assign(m, 1.0);
    for (int i = 0; i < m; ++i) {
      double mx = 0.0;
      for (const auto& t : rows[i].terms) mx = std::max(mx, std::abs(t.coef));
      if (mx > 0.0) row_scale[i] = 1.0 / mx;
    }

    std::vector<int> count(n, 0);
    for (const auto& r : rows)
      for (const auto& t : r.terms) ++count[t.var];
    col_start.assign(n + 1, 0);
    for (int j = 0; j < n; ++j) col_start[j + 1] = col_start[j] + count[j];
    row_index.resize(col_start[n]);
    col_value.resize(col_start[n]);
    std::vector<int> fill(col_start.begin(), col_start.end() - 1);
    for (int i = 0; i < m; ++i) {
      for (const auto& t : rows[i].terms) {
        row_index[fill[t.var]] = i;
        col_value[fill[t.var]] = t.coef * row_scale[i];
        ++fill[t.var];
      }
    }
    // Duplicate terms in one row are legal in the model; merge them here.
    for (int j = 0; j < n; ++j) {
      std::vector<std::pair<int, double>> entries;
      for (int k = col_start[j]; k < col_start[j + 1]; ++k)
        entries.emplace_back(row_index[k], col_value[k]);
      std::sort(entries.begin(), entries.end());
      int w = col_start[j];
      for (std::size_t k = 0; k < entries.size(); ++k) {
        if (k > 0 && entries[k].first == entries[k - 1].first) {
          col_value[w - 1] += entries[k].second;
        } else {
          row_index[w] = entries[k].first;
          col_value[w] = entries[k].second;
          ++w;
        }
      }
      for (; w < col_start[j + 1]; ++w) {
        row_index[w] = entries.empty() ? 0 : entries.back().first;
        col_value[w] = 0.0;
      }
    }

    cost.assign(total, 0.0);
    model_lb.resize(total);
    model_ub.resize(total);
    for (int j = 0; j < n; ++j) {
      const auto& v = model.variable(j);
      cost[j] = v.objective;
      model_lb[j] = v.lower;
      model_ub[j] = v.upper;
    }
    for (int i = 0; i < m; ++i) {
      row_bounds_from_relation(rows[i], model_lb[n + i], model_ub[n + i]);
    }
    reset_bounds();
  }

  void reset_bounds() {
    lb.resize(total);
    ub.resize(total);
    for (int j = 0; j < n; ++j) {
      lb[j] = model_lb[j];
      ub[j] = model_ub[j];
    }
    for (int i = 0; i < m; ++i) set_row_bounds(i, model_lb[n + i], model_ub[n + i]);
  }

  void set_row_bounds(int i, double lo, double hi) {
    lb[n + i] = lo * row_scale[i];
    ub[n + i] = hi * row_scale[i];
  }

  template <typename F>
  void for_column(int j, F&& f) const {
    if (j < n) {
      for (int k = col_start[j]; k < col_start[j + 1]; ++k) f(row_index[k], col_value[k]);
    } else {
      f(j - n, -1.0);
    }
  }

  double tol_for(double bound) const {
    return opt.primal_tolerance * std::max(1.0, std::abs(bound));
  }

  bool factorize() {
    etas.clear();
    if (m == 0) return true;
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(m) * 3);
    for (int k = 0; k < m; ++k) {
      for_column(head[k], [&](int i, double a) {
        if (a != 0.0) trip.emplace_back(i, k, a);
      });
    }
    SpMat b(m, m);
    b.setFromTriplets(trip.begin(), trip.end());
    b.makeCompressed();
    lu.analyzePattern(b);
    lu.factorize(b);
    etas.clear();
    return lu.info() == Eigen::Success;
  }

  Vec ftran(Vec rhs) const {
    if (m == 0) return rhs;
    Vec w = lu.solve(rhs);
    for (const auto& e : etas) {
      const double wr = w[e.r] / e.pivot;
      if (wr != 0.0) {
        for (std::size_t k = 0; k < e.idx.size(); ++k) w[e.idx[k]] -= e.val[k] * wr;
      }
      w[e.r] = wr;
    }
    return w;
  }

  Vec btran(Vec y) {
    for (auto it = etas.rbegin(); it != etas.rend(); ++it) {
      double acc = y[it->r];
      for (std::size_t k = 0; k < it->idx.size(); ++k) acc -= it->val[k] * y[it->idx[k]];
      y[it->r] = acc / it->pivot;
    }
    if (m == 0) return y;
    return lu.transpose().solve(y);
  }

  void set_nonbasic_value(int j) {
    switch (status[j]) {
      case BasisStatus::kAtLower:
        if (std::isfinite(lb[j])) { x[j] = lb[j]; return; }
        if (std::isfinite(ub[j])) { status[j] = BasisStatus::kAtUpper; x[j] = ub[j]; return; }
        status[j] = BasisStatus::kAtZero; x[j] = 0.0; return;
      case BasisStatus::kAtUpper:
        if (std::isfinite(ub[j])) { x[j] = ub[j]; return; }
        if (std::isfinite(lb[j])) { status[j] = BasisStatus::kAtLower; x[j] = lb[j]; return; }
        status[j] = BasisStatus::kAtZero; x[j] = 0.0; return;
      case BasisStatus::kAtZero:
        if (std::isfinite(lb[j])) { status[j] = BasisStatus::kAtLower; x[j] = lb[j]; return; }
        if (std::isfinite(ub[j])) { status[j] = BasisStatus::kAtUpper; x[j] = ub[j]; return; }
        x[j] = 0.0; return;
      case BasisStatus::kBasic: return;
    }
  }

  void slack_basis() {
    status.assign(total, BasisStatus::kAtLower);
    for (int i = 0; i < m; ++i) status[n + i] = BasisStatus::kBasic;
  }

  bool load_basis(const LpBasis* warm) {
    if (warm != nullptr && static_cast<int>(warm->status.size()) == total) {
      status = warm->status;
      int basics = 0;
      for (auto s : status) basics += (s == BasisStatus::kBasic);
      if (basics != m) slack_basis();
    } else {
      slack_basis();
    }
    head.clear();
    pos.assign(total, -1);
    x.assign(total, 0.0);
    for (int j = 0; j < total; ++j) {
      if (status[j] == BasisStatus::kBasic) {
        pos[j] = static_cast<int>(head.size());
        head.push_back(j);
      } else {
        set_nonbasic_value(j);
      }
    }
    return factorize();
  }

  void compute_basic_values() {
    Vec rhs = Vec::Zero(m);
    for (int j = 0; j < total; ++j) {
      if (status[j] == BasisStatus::kBasic || x[j] == 0.0) continue;
      const double xj = x[j];
      for_column(j, [&](int i, double a) { rhs[i] -= a * xj; });
    }
    Vec xb = ftran(rhs);
    // One step of iterative refinement.
    Vec res = rhs;
    for (int k = 0; k < m; ++k) {
      const double v = xb[k];
      if (v == 0.0) continue;
      for_column(head[k], [&](int i, double a) { res[i] -= a * v; });
    }
    xb += ftran(res);
    for (int k = 0; k < m; ++k) x[head[k]] = xb[k];
  }

  int infeasibility_sign(int j) const {
    if (x[j] < lb[j] - tol_for(lb[j])) return -1;
    if (x[j] > ub[j] + tol_for(ub[j])) return 1;
    return 0;
  }

  LpResult solve(const LpBasis* warm) {
    LpResult result;
    if (!load_basis(warm)) {
      slack_basis();
      if (!load_basis(nullptr)) {
        result.status = LpStatus::kNumericalFailure;
        return result;
      }
    }
    compute_basic_values();

    long iter = 0;
    int degenerate_run = 0;
    bool bland = false;
    bool fresh = true;

    auto refactor = [&]() -> bool {
      if (!factorize()) return false;
      compute_basic_values();
      fresh = true;
      return true;
    };

    while (true) {
      if (iter >= opt.max_iterations) {
        result.status = LpStatus::kIterationLimit;
        break;
      }
      bool phase1 = false;
      Vec cb(m);
      for (int k = 0; k < m; ++k) {
        const int s = infeasibility_sign(head[k]);
        if (s != 0) phase1 = true;
        cb[k] = static_cast<double>(s);
      }
      if (!phase1) {
        for (int k = 0; k < m; ++k) cb[k] = cost[head[k]];
      }
      Vec pi = btran(cb);

      // Pricing.
      int enter = -1;
      double enter_d = 0.0;
      double best = 0.0;
      for (int j = 0; j < total; ++j) {
        const BasisStatus st = status[j];
        if (st == BasisStatus::kBasic) continue;
        if (lb[j] == ub[j]) continue;
        double d = phase1 ? 0.0 : cost[j];
        if (j < n) {
          for (int k = col_start[j]; k < col_start[j + 1]; ++k) d -= pi[row_index[k]] * col_value[k];
        } else {
          d += pi[j - n];
        }
        bool eligible = false;
        if (st == BasisStatus::kAtLower) eligible = d < -opt.dual_tolerance;
        else if (st == BasisStatus::kAtUpper) eligible = d > opt.dual_tolerance;
        else eligible = std::abs(d) > opt.dual_tolerance;
        if (!eligible) continue;
        if (bland) {
          enter = j;
          enter_d = d;
          break;
        }
        if (std::abs(d) > best) {
          best = std::abs(d);
          enter = j;
          enter_d = d;
        }
      }

      if (enter < 0) {
        if (!fresh) {
          if (!refactor()) { result.status = LpStatus::kNumericalFailure; break; }
          continue;
        }
        result.status = phase1 ? LpStatus::kInfeasible : LpStatus::kOptimal;
        if (!phase1) {
          result.row_duals.resize(m);
          for (int i = 0; i < m; ++i) result.row_duals[i] = pi[i] * row_scale[i];
        }
        break;
      }

      Vec col = Vec::Zero(m);
      for_column(enter, [&](int i, double a) { col[i] = a; });
      Vec alpha = ftran(col);
      const double dir = enter_d < 0.0 ? 1.0 : -1.0;

      // Harris two-pass ratio test. Infeasible basics (phase 1) moving toward
      // their violated bound break at that bound exactly.
      double t_max = kInf;
      for (int k = 0; k < m; ++k) {
        const double a = alpha[k];
        if (std::abs(a) <= opt.pivot_tolerance) continue;
        const double delta = -dir * a;
        const int j = head[k];
        const double xv = x[j];
        const int inf = infeasibility_sign(j);
        double ratio = kInf;
        if (delta < 0.0) {
          if (inf > 0) ratio = (xv - ub[j]) / -delta;
          else if (inf == 0 && std::isfinite(lb[j])) ratio = (xv - lb[j] + tol_for(lb[j])) / -delta;
        } else {
          if (inf < 0) ratio = (lb[j] - xv) / delta;
          else if (inf == 0 && std::isfinite(ub[j])) ratio = (ub[j] - xv + tol_for(ub[j])) / delta;
        }
        t_max = std::min(t_max, ratio);
      }
      int leave = -1;
      double theta = kInf;
      double leave_value = 0.0;
      BasisStatus leave_status = BasisStatus::kAtLower;
      double best_pivot = 0.0;
      for (int k = 0; k < m; ++k) {
        const double a = alpha[k];
        if (std::abs(a) <= opt.pivot_tolerance) continue;
        const double delta = -dir * a;
        const int j = head[k];
        const double xv = x[j];
        const int inf = infeasibility_sign(j);
        double ratio = kInf;
        double bound = 0.0;
        BasisStatus bs = BasisStatus::kAtLower;
        if (delta < 0.0) {
          if (inf > 0) { ratio = (xv - ub[j]) / -delta; bound = ub[j]; bs = BasisStatus::kAtUpper; }
          else if (inf == 0 && std::isfinite(lb[j])) { ratio = (xv - lb[j]) / -delta; bound = lb[j]; bs = BasisStatus::kAtLower; }
        } else {
          if (inf < 0) { ratio = (lb[j] - xv) / delta; bound = lb[j]; bs = BasisStatus::kAtLower; }
          else if (inf == 0 && std::isfinite(ub[j])) { ratio = (ub[j] - xv) / delta; bound = ub[j]; bs = BasisStatus::kAtUpper; }
        }
        if (!std::isfinite(ratio)) continue;
        ratio = std::max(ratio, 0.0);
        bool take = false;
        if (bland) {
          take = leave < 0 || ratio < theta - 1e-12 ||
                 (ratio <= theta + 1e-12 && j < head[leave]);
        } else {
          take = ratio <= t_max && std::abs(a) > best_pivot;
        }
        if (take) {
          leave = k;
          theta = ratio;
          best_pivot = std::abs(a);
          leave_value = bound;
          leave_status = lb[j] == ub[j] ? BasisStatus::kAtLower : bs;
        }
      }

      const double flip = (std::isfinite(lb[enter]) && std::isfinite(ub[enter])) ? ub[enter] - lb[enter] : kInf;
      if (leave < 0 && !std::isfinite(flip)) {
        if (!fresh) {
          if (!refactor()) { result.status = LpStatus::kNumericalFailure; break; }
          continue;
        }
        result.status = phase1 ? LpStatus::kNumericalFailure : LpStatus::kUnbounded;
        break;
      }

      ++iter;
      fresh = false;
      if (leave < 0 || flip <= theta) {
        // Bound flip: entering variable moves to its opposite bound.
        theta = flip;
        for (int k = 0; k < m; ++k) x[head[k]] -= dir * theta * alpha[k];
        if (dir > 0) { status[enter] = BasisStatus::kAtUpper; x[enter] = ub[enter]; }
        else { status[enter] = BasisStatus::kAtLower; x[enter] = lb[enter]; }
      } else {
        for (int k = 0; k < m; ++k) x[head[k]] -= dir * theta * alpha[k];
        x[enter] += dir * theta;
        const int out = head[leave];
        x[out] = leave_value;
        status[out] = leave_status;
        pos[out] = -1;
        head[leave] = enter;
        pos[enter] = leave;
        status[enter] = BasisStatus::kBasic;
        Eta e;
        e.r = leave;
        e.pivot = alpha[leave];
        for (int k = 0; k < m; ++k) {
          if (k != leave && std::abs(alpha[k]) > 1e-14) {
            e.idx.push_back(k);
            e.val.push_back(alpha[k]);
          }
        }
        etas.push_back(std::move(e));
        if (static_cast<int>(etas.size()) >= opt.refactor_interval) {
          if (!refactor()) { result.status = LpStatus::kNumericalFailure; break; }
          fresh = false;  // values were recomputed but optimality still needs a pass
        }
      }

      if (theta < 1e-11) {
        if (++degenerate_run >= opt.degenerate_pivot_limit && !bland) {
          bland = true;
          ++result.bland_activations;
        }
      } else {
        degenerate_run = 0;
        bland = false;
      }
    }

    result.iterations = iter;
    result.basis.status = status;
    result.values.assign(x.begin(), x.begin() + n);
    double obj = offset;
    for (int j = 0; j < n; ++j) obj += cost[j] * x[j];
    result.objective = obj;
    result.max_residual = residual(result.values);
    return result;
  }

  double residual(const std::vector<double>& v) const {
    double worst = 0.0;
    for (int j = 0; j < n; ++j) {
      worst = std::max({worst, lb[j] - v[j], v[j] - ub[j]});
    }
    for (int i = 0; i < m; ++i) {
      double act = 0.0;
      for (const auto& t : rows[i].terms) act += t.coef * v[t.var];
      const double lo = lb[n + i] / row_scale[i];
      const double hi = ub[n + i] / row_scale[i];
      worst = std::max({worst, lo - act, act - hi});
    }
    return worst;
  }
};

LpSolver::LpSolver(const MilpModel& model, LpOptions options)
    : impl_(std::make_unique<Impl>(model, options)) {}

LpSolver::~LpSolver() = default;

void LpSolver::set_column_bounds(int col, double lower, double upper) {
  impl_->lb[col] = lower;
  impl_->ub[col] = upper;
}

void LpSolver::set_row_bounds(int row, double lower, double upper) {
  impl_->set_row_bounds(row, lower, upper);
}

void LpSolver::reset_bounds() { impl_->reset_bounds(); }

int LpSolver::num_columns() const { return impl_->n; }
int LpSolver::num_rows() const { return impl_->m; }

LpResult LpSolver::solve(const LpBasis* warm_start) { return impl_->solve(warm_start); }

LpResult solve_lp(const MilpModel& model, LpOptions options) {
  LpSolver solver(model, options);
  return solver.solve();
}

}  // namespace xb::milp
