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

#include "xbsched/recourse/recourse.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "xbsched/core/capacity.hpp"
#include "xbsched/core/error.hpp"
#include "xbsched/milp/branch_and_bound.hpp"

namespace xb {

const char* to_string(RecourseMethod m) {
  switch (m) {
    case RecourseMethod::kMilp: return "milp";
    case RecourseMethod::kEnumeration: return "enumeration";
  }
  return "unknown";
}

int RecourseResult::total_duties() const { return std::accumulate(duty_counts.begin(), duty_counts.end(), 0); }
int RecourseResult::cancelled_hours() const { return std::accumulate(understaffing.begin(), understaffing.end(), 0); }
int RecourseResult::overstaffed_hours() const { return std::accumulate(overstaffing.begin(), overstaffing.end(), 0); }

namespace {

void check_inputs(const std::vector<Duty>& duties, const std::vector<int>& demand, int capacity) {
  if (capacity < 0) throw std::invalid_argument("duty capacity N must be >= 0");
  for (const auto& d : duties) {
    if (d.coverage.size() != demand.size()) throw std::invalid_argument("demand length differs from duty coverage");
  }
}

}  // namespace

milp::MilpModel build_recourse_model(const std::vector<Duty>& duties, const std::vector<int>& demand, int capacity,
                                     const Rational& c1) {
  check_inputs(duties, demand, capacity);
  milp::MilpModel m;
  const int T = static_cast<int>(demand.size());
  std::vector<milp::VarId> v, y, z;
  for (const auto& d : duties) {
    v.push_back(m.add_variable("v_" + std::to_string(d.id), 0.0, capacity, true, d.cost.to_double()));
  }
  for (int t = 0; t < T; ++t) y.push_back(m.add_variable("y_" + std::to_string(t), 0.0, milp::kInf, true, c1.to_double()));
  for (int t = 0; t < T; ++t) z.push_back(m.add_variable("z_" + std::to_string(t), 0.0, milp::kInf, true, 0.0));

  std::vector<milp::Term> total;
  for (auto id : v) total.push_back({id, 1.0});
  m.add_constraint("cap_ub", total, milp::Relation::kLessEqual, capacity);
  m.add_constraint("cap_lb", total, milp::Relation::kGreaterEqual, capacity);
  for (int t = 0; t < T; ++t) {
    std::vector<milp::Term> row;
    for (std::size_t w = 0; w < duties.size(); ++w)
      if (duties[w].coverage[t]) row.push_back({v[w], 1.0});
    row.push_back({y[t], 1.0});
    row.push_back({z[t], -1.0});
    m.add_constraint("demand_" + std::to_string(t), row, milp::Relation::kEqual, demand[t]);
  }
  return m;
}

RecourseResult recourse_from_counts(const std::vector<Duty>& duties, const std::vector<int>& demand,
                                    std::vector<int> counts, const Rational& c1, RecourseMethod method) {
  RecourseResult r;
  r.method = method;
  const std::size_t T = demand.size();
  std::vector<int> cover(T, 0);
  Rational duty_cost(0);
  for (std::size_t w = 0; w < duties.size(); ++w) {
    if (counts[w] == 0) continue;
    duty_cost += duties[w].cost * Rational(counts[w]);
    for (std::size_t t = 0; t < T; ++t)
      if (duties[w].coverage[t]) cover[t] += counts[w];
  }
  r.understaffing.resize(T);
  r.overstaffing.resize(T);
  int cancelled = 0;
  for (std::size_t t = 0; t < T; ++t) {
    r.understaffing[t] = std::max(0, demand[t] - cover[t]);
    r.overstaffing[t] = std::max(0, cover[t] - demand[t]);
    cancelled += r.understaffing[t];
  }
  r.duty_counts = std::move(counts);
  r.cost = c1 * Rational(cancelled) + duty_cost;
  return r;
}

RecourseResult solve_recourse_exact(const std::vector<Duty>& duties, const std::vector<int>& demand, int capacity,
                                    const Rational& c1) {
  check_inputs(duties, demand, capacity);
  if (capacity == 0 || duties.empty()) {
    if (capacity > 0) throw std::invalid_argument("positive duty capacity with an empty duty catalog");
    return recourse_from_counts(duties, demand, std::vector<int>(duties.size(), 0), c1, RecourseMethod::kMilp);
  }
  const milp::MilpModel model = build_recourse_model(duties, demand, capacity, c1);
  milp::SolveParams params;
  params.relative_gap = 0.0;
  params.absolute_gap = 1e-6;

  // Seed with N copies of the cheapest duty.
  std::vector<double> start(model.num_variables(), 0.0);
  std::size_t cheapest = 0;
  for (std::size_t w = 1; w < duties.size(); ++w)
    if (duties[w].cost < duties[cheapest].cost) cheapest = w;
  std::vector<int> counts(duties.size(), 0);
  counts[cheapest] = capacity;
  const RecourseResult seed = recourse_from_counts(duties, demand, counts, c1, RecourseMethod::kMilp);
  const std::size_t W = duties.size(), T = demand.size();
  start[cheapest] = capacity;
  for (std::size_t t = 0; t < T; ++t) {
    start[W + t] = seed.understaffing[t];
    start[W + T + t] = seed.overstaffing[t];
  }
  const milp::WarmStart ws = milp::warm_start(model, start);
  const milp::MilpSolution sol = milp::solve_milp(model, params, &ws);
  if (sol.status != milp::MilpStatus::kOptimal) {
    throw Error(std::string("recourse solve ended with status ") + milp::to_string(sol.status));
  }
  for (std::size_t w = 0; w < W; ++w) counts[w] = static_cast<int>(std::lround(sol.values[w]));
  return recourse_from_counts(duties, demand, std::move(counts), c1, RecourseMethod::kMilp);
}

RecourseResult solve_recourse_enumeration(const std::vector<Duty>& duties, const std::vector<int>& demand,
                                          int capacity, const Rational& c1, std::int64_t max_multisets) {
  check_inputs(duties, demand, capacity);
  const int W = static_cast<int>(duties.size());
  if (capacity > 0 && W == 0) throw std::invalid_argument("positive duty capacity with an empty duty catalog");
  // C(W + N - 1, N), guarded against overflow.
  double count = 1.0;
  for (int i = 1; i <= capacity; ++i) count = count * (W + i - 1) / i;
  if (count > static_cast<double>(max_multisets)) throw std::length_error("too many duty multisets to enumerate");

  std::vector<int> counts(W, 0), best;
  Rational best_cost(0);
  bool have = false;
  // Duty ids in non-decreasing order, smallest first: lexicographic order.
  auto rec = [&](auto&& self, int from, int left) -> void {
    if (left == 0) {
      const Rational c = recourse_from_counts(duties, demand, counts, c1, RecourseMethod::kEnumeration).cost;
      if (!have || c < best_cost) {
        best_cost = c;
        best = counts;
        have = true;
      }
      return;
    }
    for (int w = from; w < W; ++w) {
      ++counts[w];
      self(self, w, left - 1);
      --counts[w];
    }
  };
  rec(rec, 0, capacity);
  return recourse_from_counts(duties, demand, best, c1, RecourseMethod::kEnumeration);
}

const RecourseResult& RecourseCache::get(const std::vector<std::vector<DailyScenario>>& scenarios, int day, int s,
                                         int capacity) {
  if (memo_.size() < scenarios.size()) memo_.resize(scenarios.size());
  auto& by_s = memo_[day];
  if (by_s.size() < scenarios[day].size()) by_s.resize(scenarios[day].size());
  auto& by_n = by_s[s];
  if (static_cast<int>(by_n.size()) <= capacity) by_n.resize(capacity + 1);
  auto& slot = by_n[capacity];
  if (!slot) {
    slot = solve_recourse_exact(instance_.duties, scenarios[day][s].demand, capacity, instance_.costs.c1);
    ++solves_;
  }
  return *slot;
}

std::optional<Rational> first_stage_objective(const Instance& in, const FirstStageSolution& fs, PreferenceMode mode,
                                              RecourseCache& cache,
                                              const std::vector<std::vector<DailyScenario>>& scenarios) {
  Rational total(0);
  for (int j = 0; j < in.num_days(); ++j) {
    const DayCapacity cap = day_capacity(in, fs, variant_of(mode), j);
    if (!cap.covers(in.known_demand[j])) return std::nullopt;
    if (cap.duty_capacity < 0) return std::nullopt;
    for (int s = 0; s < static_cast<int>(scenarios[j].size()); ++s) {
      total += scenarios[j][s].probability * cache.get(scenarios, j, s, cap.duty_capacity).cost;
    }
  }
  return total - in.welfare_weight(mode) * Rational(welfare_sum(in, fs));
}

EnumerationResult enumerate_first_stage(const Instance& in, PreferenceMode mode, bool keep_table) {
  const int P = in.num_patterns();
  double combos = 1.0;
  for (int e = 0; e < in.num_employees; ++e) combos *= P;
  if (combos > 1e6) throw std::length_error("first-stage enumeration limited to 1e6 assignments");

  EnumerationResult out;
  RecourseCache cache(in);
  FirstStageSolution fs;
  fs.pattern_of.assign(in.num_employees, 0);
  while (true) {
    const auto obj = first_stage_objective(in, fs, mode, cache, in.scenarios);
    if (obj && (!out.feasible || *obj < out.best_objective)) {
      out.feasible = true;
      out.best = fs;
      out.best_objective = *obj;
    }
    if (keep_table) out.table.push_back({fs, obj.has_value(), obj.value_or(Rational(0))});
    int e = in.num_employees - 1;
    while (e >= 0 && ++fs.pattern_of[e] == P) fs.pattern_of[e--] = 0;
    if (e < 0) break;
  }
  return out;
}

}  // namespace xb
