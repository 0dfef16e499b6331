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
#include <optional>
#include <string>
#include <vector>

#include "xbsched/core/rational.hpp"
#include "xbsched/core/types.hpp"
#include "xbsched/formulation/extensive_form.hpp"
#include "xbsched/formulation/solve.hpp"
#include "xbsched/milp/branch_and_bound.hpp"

namespace xb {

using ScenarioSet = std::vector<std::vector<DailyScenario>>;  // [day][scenario]

struct EvaluationConfig {
  int num_eval_scenarios = 1000;
  std::uint64_t eval_seed = 1;
  // Score first stages from the no-preference model under the preference
  // formulation (q_{e,j} and the welfare term). When false they are scored
  // with q_j and c3 = 0.
  bool cross_eval = true;
  int workers = 1;
};

struct SolverStats {
  std::string status = "none";
  double seconds = 0.0;
  double gap = 0.0;
  double bound = 0.0;
  long nodes = 0;
  int solves = 0;
  int solved = 0;  // solves that closed the gap
};

// Expectations over equally weighted evaluation scenarios, summed over the
// horizon. Scenario i of an evaluation set is the horizon that takes the
// i-th scenario of every day.
struct EvaluationReport {
  std::string label;
  Rational cost;
  Rational cancelled_service_hours;
  Rational social_welfare;  // mean score of the assigned patterns
  std::int64_t xb_absences = 0;
  Rational overstaffing_hours;
  double utilization_rate = 0.0;
  Rational overtime_hours;
  Rational covered_hours;  // unknown-absence hours covered
  Rational paid_hours;
  int num_scenarios = 0;
  std::vector<Rational> scenario_costs;
  SolverStats solver;
};

// Throws InfeasibleInstance naming every day whose duty capacity is negative
// under `mode`, and std::invalid_argument when the days of `eval` do not all
// hold the same number of scenarios.
EvaluationReport evaluate_first_stage(const Instance& instance, const FirstStageSolution& first_stage,
                                      const ScenarioSet& eval, PreferenceMode mode = PreferenceMode::kWith,
                                      int workers = 1);

// Field-wise mean in the given order. Costs per scenario are concatenated.
EvaluationReport mean_report(const std::vector<EvaluationReport>& reports, const std::string& label = "Mean");

// Percentage improvements of `candidate` over `baseline`: cost and S.W. are
// means of per-instance ratios, C.S. is the ratio of the means. A delta is
// undefined when its baseline is zero.
struct Deltas {
  std::optional<double> cost;
  std::optional<double> cancelled_service;
  std::optional<double> social_welfare;
};

Deltas percentage_deltas(const std::vector<EvaluationReport>& baseline,
                         const std::vector<EvaluationReport>& candidate);
Deltas percentage_deltas(const EvaluationReport& baseline, const EvaluationReport& candidate);

PreferenceMode evaluation_mode(PreferenceMode trained, const EvaluationConfig& config);

struct SolvedEvaluation {
  StochasticSolveResult solve;
  EvaluationReport report;
};

// Throws SolverLimit when the solver stops without an incumbent.
SolvedEvaluation solve_and_evaluate(const Instance& instance, const FormulationConfig& formulation,
                                    const ScenarioSet& eval, const milp::SolveParams& params,
                                    const EvaluationConfig& config);

SolverStats solver_stats(const StochasticSolveResult& r, const milp::SolveParams& params);

// Absolute optimality slack |objective - bound| of one solve.
double absolute_gap(const StochasticSolveResult& r);

struct VssResult {
  EvaluationReport stochastic;
  EvaluationReport deterministic;
  Deltas deltas;  // stochastic over deterministic
  Rational vss;   // deterministic cost - stochastic cost
  double gap_allowance = 0.0;
};

VssResult compute_vss(const Instance& instance, const ScenarioSet& eval, const milp::SolveParams& params,
                      PreferenceMode mode, const EvaluationConfig& config);
// Reuses `stochastic`, the full-scenario solve of `instance` under `mode`
// evaluated on `eval`.
VssResult compute_vss(const Instance& instance, const ScenarioSet& eval, const milp::SolveParams& params,
                      PreferenceMode mode, const EvaluationConfig& config, const SolvedEvaluation& stochastic);

struct EvpiResult {
  EvaluationReport stochastic;
  EvaluationReport wait_and_see;
  Deltas deltas;  // wait-and-see over stochastic
  Rational evpi;  // stochastic cost - wait-and-see cost
  int sign_flips = 0;  // scenarios where wait-and-see scores worse
  double gap_allowance = 0.0;
};

// Wait-and-see: one solve per evaluation scenario with that scenario as the
// only one of every day.
EvpiResult compute_evpi(const Instance& instance, const ScenarioSet& eval, const milp::SolveParams& params,
                        PreferenceMode mode, const EvaluationConfig& config);
EvpiResult compute_evpi(const Instance& instance, const ScenarioSet& eval, const milp::SolveParams& params,
                        PreferenceMode mode, const EvaluationConfig& config, const SolvedEvaluation& stochastic);

struct ScenarioCountRow {
  int count = 0;
  EvaluationReport report;
  std::optional<Deltas> versus_previous;
};

// `family` holds instances that differ only in their training scenarios.
std::vector<ScenarioCountRow> scenario_count_study(const std::vector<Instance>& family, const ScenarioSet& eval,
                                                   const milp::SolveParams& params, PreferenceMode mode,
                                                   const EvaluationConfig& config);

// Emitters. CSV columns: label, cost, cancelled_service_hours,
// social_welfare, xb_absences, overstaffing_hours, utilization_rate,
// overtime_hours, solver_status, solve_seconds, gap, nodes, solved.
// solve_seconds is left empty unless `timing` is set, so that reruns are
// byte-identical.
std::string reports_to_csv(const std::vector<EvaluationReport>& reports, bool timing = false);
std::string report_to_json(const EvaluationReport& report, bool timing = false);
std::string metrics_markdown(const std::vector<EvaluationReport>& reports, bool timing = false);
std::string deltas_markdown(const std::vector<std::string>& labels, const std::vector<Deltas>& rows,
                            const Deltas& mean);
std::string format_number(double v, int digits = 4);

}  // namespace xb
