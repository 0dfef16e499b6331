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

#include "xbsched/evaluation/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "xbsched/core/capacity.hpp"
#include "xbsched/core/error.hpp"
#include "xbsched/recourse/recourse.hpp"

namespace xb {

namespace {

int scenarios_per_day(const ScenarioSet& eval) {
  if (eval.empty() || eval[0].empty()) throw std::invalid_argument("evaluation set is empty");
  const std::size_t n = eval[0].size();
  for (std::size_t j = 1; j < eval.size(); ++j) {
    if (eval[j].size() != n) {
      throw std::invalid_argument("evaluation day " + std::to_string(j) + " has " + std::to_string(eval[j].size()) +
                                  " scenarios, day 0 has " + std::to_string(n));
    }
  }
  return static_cast<int>(n);
}

// Runs f(k) for k in [0, n) on up to `workers` threads. Results must be
// written to slot k only.
template <class F>
void parallel_for(int n, int workers, F f) {
  workers = std::max(1, std::min(workers, n));
  if (workers == 1) {
    for (int k = 0; k < n; ++k) f(k);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex mu;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int k = w; k < n; k += workers) {
        try {
          f(k);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::optional<double> improvement(double base, double cand, bool lower_is_better) {
  if (base == 0.0) return std::nullopt;
  const double diff = lower_is_better ? base - cand : cand - base;
  return 100.0 * diff / std::abs(base);
}


StochasticSolveResult checked_solve(const Instance& in, const FormulationConfig& fc, const milp::SolveParams& params) {
  StochasticSolveResult r = solve_extensive_form(in, fc, params);
  if (!r.milp.has_incumbent()) {
    throw SolverLimit(std::string("solver stopped without a feasible first stage (status ") +
                milp::to_string(r.milp.status) + ")");
  }
  return r;
}

std::string cell(const std::optional<double>& v) { return v ? format_number(*v, 2) : "n/a"; }

}  // namespace

std::string format_number(double v, int digits) {
  if (std::abs(v) < 0.5 * std::pow(10.0, -digits)) v = 0.0;  // no "-0.0000"
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

EvaluationReport evaluate_first_stage(const Instance& in, const FirstStageSolution& fs, const ScenarioSet& eval,
                                      PreferenceMode mode, int workers) {
  const int n = scenarios_per_day(eval);
  if (static_cast<int>(eval.size()) != in.num_days()) throw std::invalid_argument("evaluation set has wrong day count");
  const AbsenceVariant var = variant_of(mode);

  std::vector<int> capacity(in.num_days());
  std::string problems;
  EvaluationReport rep;
  for (int j = 0; j < in.num_days(); ++j) {
    const DayCapacity c = day_capacity(in, fs, var, j);
    capacity[j] = c.duty_capacity;
    rep.xb_absences += c.expected_absences;
    if (c.duty_capacity < 0) {
      problems += " day " + std::to_string(j) + ": capacity " + std::to_string(c.duty_capacity) + " (working " +
                  std::to_string(c.working) + ", known demand " + std::to_string(in.known_demand[j]) +
                  ", rounded absences " + std::to_string(c.expected_absences) + ");";
    }
  }
  if (!problems.empty()) throw InfeasibleInstance("first stage infeasible under evaluation:" + problems);

  std::vector<RecourseResult> results(static_cast<std::size_t>(in.num_days()) * n);
  parallel_for(static_cast<int>(results.size()), workers, [&](int k) {
    const int j = k / n, i = k % n;
    results[k] = solve_recourse_exact(in.duties, eval[j][i].demand, capacity[j], in.costs.c1);
  });

  // Fixed reduction order: day-major, then scenario.
  const Rational welfare = in.welfare_weight(mode) * Rational(welfare_sum(in, fs));
  std::vector<Rational> per_scenario(n, -welfare);
  std::int64_t cs = 0, ovs = 0, ovt = 0, covered = 0, paid = 0;
  for (int j = 0; j < in.num_days(); ++j) {
    for (int i = 0; i < n; ++i) {
      const RecourseResult& r = results[static_cast<std::size_t>(j) * n + i];
      per_scenario[i] += r.cost;
      cs += r.cancelled_hours();
      ovs += r.overstaffed_hours();
      for (int t = 0; t < in.num_periods(); ++t) covered += eval[j][i].demand[t] - r.understaffing[t];
      paid += 8 * in.known_demand[j];
      for (int w = 0; w < in.num_duties(); ++w) {
        paid += static_cast<std::int64_t>(r.duty_counts[w]) * in.duties[w].work_hours;
        ovt += static_cast<std::int64_t>(r.duty_counts[w]) * in.duties[w].overtime_hours();
      }
    }
  }
  Rational total(0);
  for (const auto& c : per_scenario) total += c;
  rep.cost = total / Rational(n);
  rep.cancelled_service_hours = Rational(cs, n);
  rep.overstaffing_hours = Rational(ovs, n);
  rep.overtime_hours = Rational(ovt, n);
  rep.covered_hours = Rational(covered, n);
  rep.paid_hours = Rational(paid, n);
  rep.utilization_rate = paid == 0 ? 0.0 : static_cast<double>(covered) / static_cast<double>(paid);
  rep.social_welfare = Rational(welfare_sum(in, fs), std::max(1, in.num_employees));
  rep.num_scenarios = n;
  rep.scenario_costs = std::move(per_scenario);
  return rep;
}

EvaluationReport mean_report(const std::vector<EvaluationReport>& reports, const std::string& label) {
  if (reports.empty()) throw std::invalid_argument("no reports to average");
  const Rational k(static_cast<std::int64_t>(reports.size()));
  EvaluationReport m;
  m.label = label;
  Rational xb(0);
  double util = 0.0, seconds = 0.0, gap = 0.0;
  for (const auto& r : reports) {
    m.cost += r.cost;
    m.cancelled_service_hours += r.cancelled_service_hours;
    m.social_welfare += r.social_welfare;
    xb += Rational(r.xb_absences);
    m.overstaffing_hours += r.overstaffing_hours;
    m.overtime_hours += r.overtime_hours;
    m.covered_hours += r.covered_hours;
    m.paid_hours += r.paid_hours;
    util += r.utilization_rate;
    m.num_scenarios += r.num_scenarios;
    m.scenario_costs.insert(m.scenario_costs.end(), r.scenario_costs.begin(), r.scenario_costs.end());
    seconds += r.solver.seconds;
    gap = std::max(gap, r.solver.gap);
    m.solver.nodes += r.solver.nodes;
    m.solver.solves += r.solver.solves;
    m.solver.solved += r.solver.solved;
  }
  m.cost = m.cost / k;
  m.cancelled_service_hours = m.cancelled_service_hours / k;
  m.social_welfare = m.social_welfare / k;
  m.xb_absences = static_cast<std::int64_t>(std::llround((xb / k).to_double()));
  m.overstaffing_hours = m.overstaffing_hours / k;
  m.overtime_hours = m.overtime_hours / k;
  m.covered_hours = m.covered_hours / k;
  m.paid_hours = m.paid_hours / k;
  m.utilization_rate = util / static_cast<double>(reports.size());
  m.solver.status = m.solver.solved == m.solver.solves ? "optimal" : "mixed";
  m.solver.seconds = seconds / static_cast<double>(reports.size());
  m.solver.gap = gap;
  return m;
}

Deltas percentage_deltas(const std::vector<EvaluationReport>& baseline,
                         const std::vector<EvaluationReport>& candidate) {
  if (baseline.size() != candidate.size() || baseline.empty()) {
    throw std::invalid_argument("delta inputs must be non-empty and paired");
  }
  Deltas d;
  double cost = 0.0, sw = 0.0;
  bool cost_ok = true, sw_ok = true;
  Rational cs_base(0), cs_cand(0);
  for (std::size_t i = 0; i < baseline.size(); ++i) {
    const auto c = improvement(baseline[i].cost.to_double(), candidate[i].cost.to_double(), true);
    const auto s = improvement(baseline[i].social_welfare.to_double(), candidate[i].social_welfare.to_double(), false);
    if (c) cost += *c; else cost_ok = false;
    if (s) sw += *s; else sw_ok = false;
    cs_base += baseline[i].cancelled_service_hours;
    cs_cand += candidate[i].cancelled_service_hours;
  }
  const double k = static_cast<double>(baseline.size());
  if (cost_ok) d.cost = cost / k;
  if (sw_ok) d.social_welfare = sw / k;
  d.cancelled_service = improvement(cs_base.to_double(), cs_cand.to_double(), true);
  return d;
}

Deltas percentage_deltas(const EvaluationReport& baseline, const EvaluationReport& candidate) {
  return percentage_deltas(std::vector<EvaluationReport>{baseline}, std::vector<EvaluationReport>{candidate});
}

PreferenceMode evaluation_mode(PreferenceMode trained, const EvaluationConfig& config) {
  return config.cross_eval ? PreferenceMode::kWith : trained;
}

SolvedEvaluation solve_and_evaluate(const Instance& in, const FormulationConfig& fc, const ScenarioSet& eval,
                                    const milp::SolveParams& params, const EvaluationConfig& config) {
  SolvedEvaluation out;
  out.solve = checked_solve(in, fc, params);
  out.report = evaluate_first_stage(in, out.solve.first_stage, eval, evaluation_mode(fc.preference, config),
                                    config.workers);
  out.report.label = in.provenance;
  out.report.solver = solver_stats(out.solve, params);
  return out;
}

SolverStats solver_stats(const StochasticSolveResult& r, const milp::SolveParams& params) {
  SolverStats s;
  s.status = milp::to_string(r.milp.status);
  s.seconds = r.milp.wall_seconds;
  s.gap = r.milp.has_incumbent() ? r.milp.gap : 0.0;
  s.bound = r.milp.best_bound;
  s.nodes = r.milp.nodes;
  s.solves = 1;
  s.solved = r.milp.status == milp::MilpStatus::kOptimal && r.milp.gap <= params.relative_gap ? 1 : 0;
  return s;
}

double absolute_gap(const StochasticSolveResult& r) {
  if (!r.milp.has_incumbent() || !std::isfinite(r.milp.best_bound)) return 0.0;
  return std::max(0.0, r.objective - r.milp.best_bound);
}

VssResult compute_vss(const Instance& in, const ScenarioSet& eval, const milp::SolveParams& params,
                      PreferenceMode mode, const EvaluationConfig& config) {
  FormulationConfig full;
  full.preference = mode;
  return compute_vss(in, eval, params, mode, config, solve_and_evaluate(in, full, eval, params, config));
}

VssResult compute_vss(const Instance& in, const ScenarioSet& eval, const milp::SolveParams& params,
                      PreferenceMode mode, const EvaluationConfig& config, const SolvedEvaluation& sto) {
  FormulationConfig ev;
  ev.preference = mode;
  ev.scenarios = ScenarioMode::kExpectedValue;
  const SolvedEvaluation det = solve_and_evaluate(in, ev, eval, params, config);
  VssResult r;
  r.stochastic = sto.report;
  r.deterministic = det.report;
  r.deltas = percentage_deltas(det.report, sto.report);
  r.vss = det.report.cost - sto.report.cost;
  r.gap_allowance = absolute_gap(sto.solve) + absolute_gap(det.solve);
  return r;
}

EvpiResult compute_evpi(const Instance& in, const ScenarioSet& eval, const milp::SolveParams& params,
                        PreferenceMode mode, const EvaluationConfig& config) {
  FormulationConfig fc;
  fc.preference = mode;
  return compute_evpi(in, eval, params, mode, config, solve_and_evaluate(in, fc, eval, params, config));
}

EvpiResult compute_evpi(const Instance& in, const ScenarioSet& eval, const milp::SolveParams& params,
                        PreferenceMode mode, const EvaluationConfig& config, const SolvedEvaluation& sto) {
  const int n = scenarios_per_day(eval);
  FormulationConfig fc;
  fc.preference = mode;
  const PreferenceMode eval_mode = evaluation_mode(mode, config);

  EvpiResult r;
  r.stochastic = sto.report;
  r.gap_allowance = absolute_gap(sto.solve);

  std::vector<EvaluationReport> ws(n);
  std::vector<double> ws_gap(n, 0.0);
  parallel_for(n, config.workers, [&](int i) {
    Instance one = in;
    ScenarioSet only(in.num_days());
    for (int j = 0; j < in.num_days(); ++j) {
      DailyScenario s = eval[j][i];
      s.probability = Rational(1);
      only[j].push_back(std::move(s));
    }
    one.scenarios = only;
    const StochasticSolveResult solve = checked_solve(one, fc, params);
    ws[i] = evaluate_first_stage(in, solve.first_stage, only, eval_mode, 1);
    ws[i].solver = solver_stats(solve, params);
    ws_gap[i] = absolute_gap(solve);
  });
  r.wait_and_see = mean_report(ws, "wait-and-see");
  r.wait_and_see.label = in.provenance;
  for (int i = 0; i < n; ++i) {
    if (ws[i].scenario_costs[0] > sto.report.scenario_costs[i]) ++r.sign_flips;
    r.gap_allowance += ws_gap[i] / n;
  }
  r.deltas = percentage_deltas(r.stochastic, r.wait_and_see);
  r.evpi = r.stochastic.cost - r.wait_and_see.cost;
  return r;
}

std::vector<ScenarioCountRow> scenario_count_study(const std::vector<Instance>& family, const ScenarioSet& eval,
                                                   const milp::SolveParams& params, PreferenceMode mode,
                                                   const EvaluationConfig& config) {
  std::vector<ScenarioCountRow> rows;
  FormulationConfig fc;
  fc.preference = mode;
  for (const auto& in : family) {
    ScenarioCountRow row;
    row.count = in.scenarios.empty() ? 0 : static_cast<int>(in.scenarios[0].size());
    row.report = solve_and_evaluate(in, fc, eval, params, config).report;
    row.report.label = std::to_string(row.count) + " scenarios";
    if (!rows.empty()) row.versus_previous = percentage_deltas(rows.back().report, row.report);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string reports_to_csv(const std::vector<EvaluationReport>& reports, bool timing) {
  std::ostringstream out;
  out << "label,cost,cancelled_service_hours,social_welfare,xb_absences,overstaffing_hours,utilization_rate,"
         "overtime_hours,solver_status,solve_seconds,gap,nodes,solved\n";
  for (const auto& r : reports) {
    out << r.label << ',' << format_number(r.cost.to_double(), 6) << ','
        << format_number(r.cancelled_service_hours.to_double(), 6) << ','
        << format_number(r.social_welfare.to_double(), 6) << ',' << r.xb_absences << ','
        << format_number(r.overstaffing_hours.to_double(), 6) << ',' << format_number(r.utilization_rate, 6) << ','
        << format_number(r.overtime_hours.to_double(), 6) << ',' << r.solver.status << ','
        << (timing ? format_number(r.solver.seconds, 3) : "") << ',' << format_number(r.solver.gap, 6) << ','
        << r.solver.nodes << ',' << r.solver.solved << '\n';
  }
  return out.str();
}

std::string report_to_json(const EvaluationReport& r, bool timing) {
  nlohmann::ordered_json j;
  j["label"] = r.label;
  j["cost"] = r.cost.to_double();
  j["cost_exact"] = r.cost.to_string();
  j["cancelled_service_hours"] = r.cancelled_service_hours.to_double();
  j["social_welfare"] = r.social_welfare.to_double();
  j["xb_absences"] = r.xb_absences;
  j["overstaffing_hours"] = r.overstaffing_hours.to_double();
  j["utilization_rate"] = r.utilization_rate;
  j["overtime_hours"] = r.overtime_hours.to_double();
  j["num_scenarios"] = r.num_scenarios;
  nlohmann::ordered_json s;
  s["status"] = r.solver.status;
  if (timing) s["seconds"] = r.solver.seconds;
  s["gap"] = r.solver.gap;
  s["nodes"] = r.solver.nodes;
  s["solves"] = r.solver.solves;
  s["solved"] = r.solver.solved;
  j["solver"] = s;
  return j.dump(1);
}

std::string metrics_markdown(const std::vector<EvaluationReport>& reports, bool timing) {
  std::ostringstream out;
  out << "| Instance | Cost | C.S. (h.) | S.W. | XB abs. | OVS. (h.) | XB util. rate (%) | OVT. (h.) | Sol. time | "
         "Opt. gap (%) |\n";
  out << "|---|---|---|---|---|---|---|---|---|---|\n";
  auto row = [&](const EvaluationReport& r) {
    out << "| " << r.label << " | " << format_number(r.cost.to_double(), 2) << " | "
        << format_number(r.cancelled_service_hours.to_double(), 2) << " | "
        << format_number(r.social_welfare.to_double(), 2) << " | " << r.xb_absences << " | "
        << format_number(r.overstaffing_hours.to_double(), 2) << " | "
        << format_number(100.0 * r.utilization_rate, 2) << " | " << format_number(r.overtime_hours.to_double(), 2)
        << " | " << (timing ? format_number(r.solver.seconds, 1) : "-") << " | "
        << format_number(100.0 * r.solver.gap, 2) << " |\n";
  };
  for (const auto& r : reports) row(r);
  if (reports.size() > 1) row(mean_report(reports));
  return out.str();
}

std::string deltas_markdown(const std::vector<std::string>& labels, const std::vector<Deltas>& rows,
                            const Deltas& mean) {
  std::ostringstream out;
  out << "| Instance | Cost (%) | C.S. (%) | S.W. (%) |\n|---|---|---|---|\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out << "| " << (i < labels.size() ? labels[i] : std::to_string(i)) << " | " << cell(rows[i].cost) << " | "
        << cell(rows[i].cancelled_service) << " | " << cell(rows[i].social_welfare) << " |\n";
  }
  out << "| Mean | " << cell(mean.cost) << " | " << cell(mean.cancelled_service) << " | "
      << cell(mean.social_welfare) << " |\n";
  return out.str();
}

}  // namespace xb
