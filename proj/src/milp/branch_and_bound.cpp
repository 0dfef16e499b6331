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

#include "xbsched/milp/branch_and_bound.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <ostream>
#include <queue>

#include "xbsched/milp/propagation.hpp"

namespace xb::milp {

const char* to_string(MilpStatus s) {
  switch (s) {
    case MilpStatus::kOptimal: return "optimal";
    case MilpStatus::kFeasible: return "feasible";
    case MilpStatus::kInfeasible: return "infeasible";
    case MilpStatus::kUnbounded: return "unbounded";
    case MilpStatus::kNoSolution: return "no_solution";
  }
  return "unknown";
}

double relative_gap(double incumbent, double bound) {
  if (!std::isfinite(incumbent)) return kInf;
  if (!std::isfinite(bound)) return kInf;
  const double diff = std::max(0.0, incumbent - bound);
  if (diff == 0.0) return 0.0;
  return diff / std::max(std::abs(incumbent), 1e-10);
}

WarmStart warm_start(const MilpModel& model, std::vector<double> values) {
  if (values.size() != static_cast<std::size_t>(model.num_variables())) {
    throw InfeasibleWarmStart("warm start has " + std::to_string(values.size()) +
                              " values, model has " +
                              std::to_string(model.num_variables()) + " variables");
  }
  for (int j = 0; j < model.num_variables(); ++j) {
    if (model.variable(j).is_integer) values[j] = std::round(values[j]);
  }
  const auto violations = check_feasibility(model, values, 1e-6);
  if (!violations.empty()) {
    throw InfeasibleWarmStart("infeasible warm start: " + violations.front().describe(model));
  }
  return WarmStart{values, model.evaluate_objective(values)};
}

namespace {

struct BoundChange {
  int col;
  double lo;
  double hi;
};

struct Node {
  long seq;
  double bound;
  int depth;
  std::vector<BoundChange> changes;
  std::shared_ptr<const LpBasis> basis;
};

struct NodeOrder {
  bool operator()(const std::unique_ptr<Node>& a, const std::unique_ptr<Node>& b) const {
    if (a->bound != b->bound) return a->bound > b->bound;
    return a->seq > b->seq;
  }
};

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class BranchAndBound {
 public:
  BranchAndBound(const MilpModel& model, const SolveParams& params)
      : model_(model), params_(params), lp_(model, params.lp), propagator_(model) {}

  MilpSolution run(const WarmStart* start) {
    const auto t0 = std::chrono::steady_clock::now();
    auto elapsed = [&] {
      return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };

    if (start != nullptr) {
      incumbent_ = start->values;
      incumbent_obj_ = start->objective;
    }

    root_ = propagator_.initial_domains();
    bool root_feasible = true;
    if (params_.propagate) root_feasible = propagator_.propagate(root_);
    if (!root_feasible) {
      sol_.status = MilpStatus::kInfeasible;
      sol_.wall_seconds = elapsed();
      return finish();
    }

    std::priority_queue<std::unique_ptr<Node>, std::vector<std::unique_ptr<Node>>, NodeOrder> open;
    open.push(std::make_unique<Node>(Node{seq_++, -kInf, 0, {}, nullptr}));
    bool limit_hit = false;
    bool unbounded = false;
    double last_bound = -kInf;

    while (!open.empty()) {
      const double bound = open.top()->bound;
      if (has_incumbent() && gap_closed(bound)) break;
      if (sol_.nodes >= params_.node_limit || elapsed() >= params_.time_limit_seconds) {
        limit_hit = true;
        break;
      }
      std::unique_ptr<Node> node = std::move(const_cast<std::unique_ptr<Node>&>(open.top()));
      open.pop();
      last_bound = std::max(last_bound, node->bound);
      ++sol_.nodes;

      if (has_incumbent() && node->bound >= cutoff()) continue;

      Domains dom = root_;
      bool feasible = true;
      for (const auto& c : node->changes) {
        dom.col_lo[c.col] = std::max(dom.col_lo[c.col], c.lo);
        dom.col_hi[c.col] = std::min(dom.col_hi[c.col], c.hi);
        if (dom.col_lo[c.col] > dom.col_hi[c.col]) feasible = false;
      }
      if (feasible && params_.propagate && !node->changes.empty()) {
        feasible = propagator_.propagate(dom);
      }
      if (!feasible) {
        record(node->seq, std::max(last_bound, node->bound), elapsed());
        continue;
      }

      for (int j = 0; j < model_.num_variables(); ++j)
        lp_.set_column_bounds(j, dom.col_lo[j], dom.col_hi[j]);
      for (int i = 0; i < model_.num_constraints(); ++i)
        lp_.set_row_bounds(i, dom.row_lo[i], dom.row_hi[i]);

      LpResult lp = lp_.solve(node->basis.get());
      if (lp.status == LpStatus::kNumericalFailure || lp.status == LpStatus::kIterationLimit) {
        lp = lp_.solve(nullptr);
      }
      sol_.lp_iterations += lp.iterations;

      if (lp.status == LpStatus::kInfeasible) {
        record(node->seq, last_bound, elapsed());
        continue;
      }
      if (lp.status == LpStatus::kUnbounded) {
        if (node->changes.empty()) {
          unbounded = true;
          break;
        }
        continue;
      }
      if (lp.status != LpStatus::kOptimal) {
        // Could not resolve this node; keep its bound out of any optimality claim.
        unresolved_bound_ = std::min(unresolved_bound_, node->bound);
        continue;
      }

      const double node_obj = std::max(lp.objective, node->bound);
      if (has_incumbent() && node_obj >= cutoff()) {
        record(node->seq, last_bound, elapsed());
        continue;
      }

      if (params_.primal_heuristic && priority_integral(lp.values)) {
        if (auto cand = params_.primal_heuristic(lp.values)) offer(std::move(*cand));
        if (has_incumbent() && node_obj >= cutoff()) {
          record(node->seq, last_bound, elapsed());
          continue;
        }
      }

      const int branch_col = select_branching_variable(lp.values, dom);
      if (branch_col < 0) {
        try_incumbent(lp.values, dom);
        record(node->seq, last_bound, elapsed());
        continue;
      }

      auto basis = std::make_shared<const LpBasis>(std::move(lp.basis));
      const double v = lp.values[branch_col];
      auto down = std::make_unique<Node>(Node{seq_++, node_obj, node->depth + 1, node->changes, basis});
      down->changes.push_back({branch_col, dom.col_lo[branch_col], std::floor(v)});
      auto up = std::make_unique<Node>(Node{seq_++, node_obj, node->depth + 1, std::move(node->changes), basis});
      up->changes.push_back({branch_col, std::ceil(v), dom.col_hi[branch_col]});
      open.push(std::move(down));
      open.push(std::move(up));
      record(node->seq, last_bound, elapsed());
    }

    sol_.wall_seconds = elapsed();
    if (unbounded) {
      sol_.status = MilpStatus::kUnbounded;
      return finish();
    }
    double bound = open.empty() ? (has_incumbent() ? incumbent_obj_ : kInf) : open.top()->bound;
    bound = std::min(bound, unresolved_bound_);
    if (has_incumbent()) bound = std::min(bound, incumbent_obj_);
    sol_.best_bound = bound;
    if (!has_incumbent()) {
      sol_.status = (limit_hit || std::isfinite(unresolved_bound_)) ? MilpStatus::kNoSolution
                                                                    : MilpStatus::kInfeasible;
      return finish();
    }
    sol_.gap = relative_gap(incumbent_obj_, bound);
    const bool closed = sol_.gap <= params_.relative_gap ||
                        incumbent_obj_ - bound <= params_.absolute_gap;
    sol_.status = closed ? MilpStatus::kOptimal : MilpStatus::kFeasible;
    return finish();
  }

 private:
  bool has_incumbent() const { return !incumbent_.empty(); }

  double cutoff() const {
    return incumbent_obj_ - std::max(params_.absolute_gap, 1e-9 * std::max(1.0, std::abs(incumbent_obj_)));
  }

  bool gap_closed(double bound) const {
    if (bound > unresolved_bound_) bound = unresolved_bound_;
    return relative_gap(incumbent_obj_, bound) <= params_.relative_gap ||
           incumbent_obj_ - bound <= params_.absolute_gap;
  }

  int select_branching_variable(const std::vector<double>& x, const Domains& dom) const {
    int best = -1;
    int best_priority = 0;
    double best_frac = 0.0;
    std::uint64_t best_key = 0;
    for (int j = 0; j < model_.num_variables(); ++j) {
      const auto& var = model_.variable(j);
      if (!var.is_integer) continue;
      if (dom.col_lo[j] == dom.col_hi[j]) continue;
      const double f = x[j] - std::floor(x[j]);
      const double frac = std::min(f, 1.0 - f);
      if (frac <= params_.integrality_tolerance) continue;
      const std::uint64_t key = params_.branching_seed == 0 ? 0 : mix(params_.branching_seed ^ mix(j));
      bool better = false;
      if (best < 0 || var.branch_priority > best_priority) {
        better = true;
      } else if (var.branch_priority == best_priority) {
        if (frac > best_frac + 1e-12) better = true;
        else if (frac >= best_frac - 1e-12 && key < best_key) better = true;
      }
      if (better) {
        best = j;
        best_priority = var.branch_priority;
        best_frac = frac;
        best_key = key;
      }
    }
    return best;
  }

  void try_incumbent(const std::vector<double>& lp_values, const Domains& dom) {
    std::vector<double> cand = lp_values;
    bool has_continuous = false;
    for (int j = 0; j < model_.num_variables(); ++j) {
      if (model_.variable(j).is_integer) cand[j] = std::round(cand[j]);
      else has_continuous = true;
    }
    if (!check_feasibility(model_, cand, 1e-6).empty() && has_continuous) {
      // Re-solve the continuous part with integers pinned at their rounded values.
      for (int j = 0; j < model_.num_variables(); ++j) {
        if (model_.variable(j).is_integer) lp_.set_column_bounds(j, cand[j], cand[j]);
        else lp_.set_column_bounds(j, dom.col_lo[j], dom.col_hi[j]);
      }
      LpResult fix = lp_.solve(nullptr);
      sol_.lp_iterations += fix.iterations;
      if (fix.status == LpStatus::kOptimal) cand = fix.values;
    }
    if (!check_feasibility(model_, cand, 1e-6).empty()) {
      ++sol_.rounding_rejections;
      return;
    }
    const double obj = model_.evaluate_objective(cand);
    if (!has_incumbent() || obj < incumbent_obj_) {
      incumbent_ = std::move(cand);
      incumbent_obj_ = obj;
    }
  }

  bool priority_integral(const std::vector<double>& x) const {
    for (int j = 0; j < model_.num_variables(); ++j) {
      const auto& var = model_.variable(j);
      if (!var.is_integer || var.branch_priority < params_.heuristic_priority) continue;
      if (std::abs(x[j] - std::round(x[j])) > params_.integrality_tolerance) return false;
    }
    return true;
  }

  void offer(std::vector<double> cand) {
    ++sol_.heuristic_calls;
    if (cand.size() != static_cast<std::size_t>(model_.num_variables())) return;
    if (!check_feasibility(model_, cand, 1e-6).empty()) return;
    const double obj = model_.evaluate_objective(cand);
    if (!has_incumbent() || obj < incumbent_obj_) {
      incumbent_ = std::move(cand);
      incumbent_obj_ = obj;
    }
  }

  void record(long /*seq*/, double bound, double elapsed) {
    const double inc = has_incumbent() ? incumbent_obj_ : kInf;
    const double b = has_incumbent() ? std::min(bound, inc) : bound;
    sol_.trajectory.push_back({sol_.nodes, b, inc});
    if (params_.log != nullptr &&
        (sol_.nodes % std::max(1L, params_.log_interval) == 0 || sol_.nodes == 1)) {
      *params_.log << "node " << sol_.nodes << " bound " << b << " incumbent " << inc
                   << " gap " << relative_gap(inc, b);
      if (params_.log_time) *params_.log << " time " << elapsed;
      *params_.log << "\n";
    }
  }

  MilpSolution finish() {
    if (has_incumbent()) {
      sol_.values = incumbent_;
      sol_.objective = incumbent_obj_;
    }
    if (params_.log != nullptr) {
      *params_.log << "done status " << to_string(sol_.status) << " nodes " << sol_.nodes
                   << " bound " << sol_.best_bound << " incumbent " << sol_.objective
                   << " gap " << sol_.gap << "\n";
    }
    return std::move(sol_);
  }

  const MilpModel& model_;
  const SolveParams& params_;
  LpSolver lp_;
  Propagator propagator_;
  Domains root_;
  MilpSolution sol_;
  std::vector<double> incumbent_;
  double incumbent_obj_ = kInf;
  double unresolved_bound_ = kInf;
  long seq_ = 0;
};

}  // namespace

MilpSolution solve_milp(const MilpModel& model, const SolveParams& params,
                        const WarmStart* start) {
  BranchAndBound bnb(model, params);
  return bnb.run(start);
}

}  // namespace xb::milp
