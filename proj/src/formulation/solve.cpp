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

#include "xbsched/formulation/solve.hpp"

#include <algorithm>
#include <cmath>

#include "xbsched/core/capacity.hpp"
#include "xbsched/formulation/second_stage.hpp"
#include "xbsched/recourse/recourse.hpp"

namespace xb {

FirstStageSolution extract_first_stage(const std::vector<double>& values, const VariableIndex& index, int patterns,
                                       int employees) {
  FirstStageSolution fs;
  fs.pattern_of.assign(employees, -1);
  for (int e = 0; e < employees; ++e) {
    int best = 0;
    for (int p = 1; p < patterns; ++p)
      if (values[index.x(p, e)] > values[index.x(best, e)]) best = p;
    fs.pattern_of[e] = best;
  }
  return fs;
}

SecondStageSolution extract_second_stage(const std::vector<double>& values, const VariableIndex& index, int duties) {
  SecondStageSolution sol;
  sol.decisions.resize(index.num_days());
  auto as_int = [&](int col) { return static_cast<int>(std::lround(values[col])); };
  int periods = 0;
  if (index.num_days() > 0 && index.num_scenarios(0) > 0) periods = index.z(0, 0, 0) - index.y(0, 0, 0);
  for (int j = 0; j < index.num_days(); ++j) {
    for (int s = 0; s < index.num_scenarios(j); ++s) {
      RecourseDecision d;
      for (int w = 0; w < duties; ++w) d.duty_counts.push_back(as_int(index.v(j, s, w)));
      for (int t = 0; t < periods; ++t) {
        d.understaffing.push_back(as_int(index.y(j, s, t)));
        d.overstaffing.push_back(as_int(index.z(j, s, t)));
      }
      sol.decisions[j].push_back(std::move(d));
    }
  }
  return sol;
}

std::optional<FirstStageSolution> heuristic_first_stage(const Instance& in, const FormulationConfig& config,
                                                        const std::vector<std::vector<DailyScenario>>& scenarios) {
  RecourseCache cache(in);
  const PreferenceMode mode = config.preference;
  auto score = [&](const FirstStageSolution& fs) { return first_stage_objective(in, fs, mode, cache, scenarios); };

  std::vector<FirstStageSolution> starts;
  FirstStageSolution favourite;
  for (int e = 0; e < in.num_employees; ++e) {
    const auto& row = in.preferences.scores[e];
    favourite.pattern_of.push_back(static_cast<int>(std::max_element(row.begin(), row.end()) - row.begin()));
  }
  starts.push_back(favourite);
  FirstStageSolution rr;
  for (int e = 0; e < in.num_employees; ++e) rr.pattern_of.push_back(e % in.num_patterns());
  starts.push_back(rr);

  std::optional<FirstStageSolution> best;
  Rational best_obj(0);
  for (const auto& s : starts) {
    const auto obj = score(s);
    if (obj && (!best || *obj < best_obj)) {
      best = s;
      best_obj = *obj;
    }
  }
  if (!best) return std::nullopt;

  bool improved = true;
  for (int pass = 0; improved && pass < 100; ++pass) {
    improved = false;
    for (int e = 0; e < in.num_employees; ++e) {
      for (int p = 0; p < in.num_patterns(); ++p) {
        if (p == best->pattern_of[e]) continue;
        FirstStageSolution cand = *best;
        cand.pattern_of[e] = p;
        const auto obj = score(cand);
        if (obj && *obj < best_obj) {
          best = std::move(cand);
          best_obj = *obj;
          improved = true;
        }
      }
    }
  }
  return best;
}

namespace {

std::vector<double> complete_with(const Instance& in, const ExtensiveForm& form, const FirstStageSolution& fs,
                                  PreferenceMode mode, RecourseCache& cache) {
  std::vector<double> values(form.model.num_variables(), 0.0);
  for (int e = 0; e < in.num_employees; ++e) values[form.index.x(fs.pattern_of[e], e)] = 1.0;
  for (int j = 0; j < in.num_days(); ++j) {
    const int n = duty_capacity(in, fs, mode, j);
    for (int s = 0; s < form.index.num_scenarios(j); ++s) {
      const RecourseResult& r = cache.get(form.scenarios, j, s, n);
      for (int w = 0; w < in.num_duties(); ++w) values[form.index.v(j, s, w)] = r.duty_counts[w];
      for (int t = 0; t < in.num_periods(); ++t) {
        values[form.index.y(j, s, t)] = r.understaffing[t];
        values[form.index.z(j, s, t)] = r.overstaffing[t];
      }
    }
  }
  return values;
}

// Solver-side columns: n_p = number of employees on pattern p,
// and per day k_j = ceil(sum_e q r x), linked by 1e6 k_j - sum q r x in
// [0, 1e6 - 1]. Branching on these fixes the staffing level of every day,
// which the relaxation of the x columns alone leaves fractional. Returns the
// id of k_0.
int add_count_columns(const Instance& in, const VariableIndex& index, PreferenceMode mode, milp::MilpModel& m) {
  const AbsenceVariant var = variant_of(mode);
  const double S = static_cast<double>(kProbabilityScale);
  for (int p = 0; p < in.num_patterns(); ++p) {
    milp::Variable n;
    n.name = "n_" + std::to_string(p);
    n.upper = in.num_employees;
    n.is_integer = true;
    n.branch_priority = 3;
    const int id = m.add_variable(std::move(n));
    std::vector<milp::Term> row{{id, 1.0}};
    for (int e = 0; e < in.num_employees; ++e) row.push_back({index.x(p, e), -1.0});
    m.add_constraint("count_" + std::to_string(p), std::move(row), milp::Relation::kEqual, 0.0);
  }
  const int first_k = m.num_variables();
  for (int j = 0; j < in.num_days(); ++j) {
    milp::Variable k;
    k.name = "k_" + std::to_string(j);
    k.upper = in.num_employees;
    k.is_integer = true;
    k.branch_priority = 4;
    const int id = m.add_variable(std::move(k));
    std::vector<milp::Term> row{{id, S}};
    for (int e = 0; e < in.num_employees; ++e) {
      const auto q = in.absence.probability(var, e, j).micros;
      if (q == 0) continue;
      for (int p = 0; p < in.num_patterns(); ++p)
        if (in.patterns[p].work[j]) row.push_back({index.x(p, e), -static_cast<double>(q)});
    }
    m.add_constraint("ceil_lb_" + std::to_string(j), row, milp::Relation::kGreaterEqual, 0.0);
    m.add_constraint("ceil_ub_" + std::to_string(j), std::move(row), milp::Relation::kLessEqual, S - 1.0);
  }
  return first_k;
}

std::vector<double> count_values(const Instance& in, const FirstStageSolution& fs, PreferenceMode mode) {
  std::vector<double> values;
  for (int p = 0; p < in.num_patterns(); ++p)
    values.push_back(static_cast<double>(std::count(fs.pattern_of.begin(), fs.pattern_of.end(), p)));
  for (int j = 0; j < in.num_days(); ++j)
    values.push_back(static_cast<double>(day_capacity(in, fs, variant_of(mode), j).expected_absences));
  return values;
}

// Extensive form strengthened in place: count columns, one-hot capacity
// columns u_{j,n} linked as in the master, and one valid row per block,
// c1 sum_t y + sum_w c v >= sum_n F_{j,s}(n) u_{j,n}, where F is the optimal
// recourse cost at capacity n. Returns the first u column of every day.
std::vector<int> add_capacity_rows(const Instance& in, const ExtensiveForm& form, PreferenceMode mode,
                                   RecourseCache& cache, milp::MilpModel& m) {
  const int first_k = add_count_columns(in, form.index, mode, m);
  std::vector<int> first_u;
  for (int j = 0; j < in.num_days(); ++j) {
    const int o = in.known_demand[j];
    std::vector<milp::Term> link{{first_k + j, 1.0}};
    for (int e = 0; e < in.num_employees; ++e)
      for (int p = 0; p < in.num_patterns(); ++p)
        if (in.patterns[p].work[j]) link.push_back({form.index.x(p, e), -1.0});
    std::vector<milp::Term> one;
    first_u.push_back(m.num_variables());
    for (int n = 0; n <= in.num_employees - o; ++n) {
      milp::Variable u;
      u.name = "u_" + std::to_string(j) + "_" + std::to_string(n);
      u.upper = 1.0;
      u.is_integer = true;
      u.branch_priority = 1;
      const int id = m.add_variable(std::move(u));
      link.push_back({id, static_cast<double>(n)});
      one.push_back({id, 1.0});
    }
    m.add_constraint("cap_" + std::to_string(j), std::move(link), milp::Relation::kEqual, -static_cast<double>(o));
    m.add_constraint("one_" + std::to_string(j), std::move(one), milp::Relation::kEqual, 1.0);
    for (int s = 0; s < form.index.num_scenarios(j); ++s) {
      std::vector<milp::Term> row;
      for (int t = 0; t < in.num_periods(); ++t) row.push_back({form.index.y(j, s, t), in.costs.c1.to_double()});
      for (int w = 0; w < in.num_duties(); ++w) row.push_back({form.index.v(j, s, w), in.duties[w].cost.to_double()});
      for (int n = 0; n <= in.num_employees - o; ++n) {
        const double f = cache.get(form.scenarios, j, s, n).cost.to_double();
        if (f != 0.0) row.push_back({first_u[j] + n, -f});
      }
      m.add_constraint("floor_" + std::to_string(j) + "_" + std::to_string(s), std::move(row),
                       milp::Relation::kGreaterEqual, 0.0);
    }
  }
  return first_u;
}

}  // namespace

std::vector<double> complete_solution(const Instance& in, const ExtensiveForm& form, const FirstStageSolution& fs,
                                      PreferenceMode mode) {
  RecourseCache cache(in);
  return complete_with(in, form, fs, mode, cache);
}

StochasticSolveResult solve_extensive_form(const Instance& in, const FormulationConfig& config,
                                           const milp::SolveParams& params, const SolveOptions& options) {
  const ExtensiveForm form = build_extensive_form(in, config);
  const PreferenceMode mode = config.preference;
  StochasticSolveResult out;
  out.size = {form.model.num_variables(), form.model.num_constraints()};

  RecourseCache cache(in);
  milp::MilpModel augmented = form.model;
  std::vector<int> first_u;
  if (options.strengthen) first_u = add_capacity_rows(in, form, mode, cache, augmented);
  auto augmented_values = [&](const FirstStageSolution& fs) -> std::optional<std::vector<double>> {
    for (int j = 0; j < in.num_days(); ++j)
      if (day_capacity(in, fs, variant_of(mode), j).duty_capacity < 0) return std::nullopt;
    std::vector<double> values = complete_with(in, form, fs, mode, cache);
    if (options.strengthen) {
      for (double c : count_values(in, fs, mode)) values.push_back(c);
      values.resize(augmented.num_variables(), 0.0);
      for (int j = 0; j < in.num_days(); ++j) values[first_u[j] + duty_capacity(in, fs, mode, j)] = 1.0;
    }
    return values;
  };

  std::optional<milp::WarmStart> start;
  if (options.warm_start) {
    if (const auto fs = heuristic_first_stage(in, config, form.scenarios)) {
      try {
        if (auto values = augmented_values(*fs)) {
          start = milp::warm_start(augmented, std::move(*values));
          out.heuristic_objective = start->objective;
        }
      } catch (const milp::InfeasibleWarmStart&) {
        start.reset();
      }
    }
  }
  // Any LP point with integral first-stage columns is completed with
  // optimal recourse in every block.
  milp::SolveParams p = params;
  p.heuristic_priority = 2;
  p.primal_heuristic = [&](const std::vector<double>& lp) {
    return augmented_values(extract_first_stage(lp, form.index, in.num_patterns(), in.num_employees));
  };
  out.milp = milp::solve_milp(augmented, p, start ? &*start : nullptr);
  if (out.milp.has_incumbent()) {
    out.milp.values.resize(form.model.num_variables());
    out.objective = out.milp.objective;
    out.first_stage = extract_first_stage(out.milp.values, form.index, in.num_patterns(), in.num_employees);
    out.second_stage = extract_second_stage(out.milp.values, form.index, in.num_duties());
    out.identity_holds = ceiling_identity_check(in, out.first_stage, out.second_stage, mode);
  }
  return out;
}

}  // namespace xb
