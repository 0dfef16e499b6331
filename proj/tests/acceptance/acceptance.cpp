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

// Acceptance suite: one PASS/FAIL line per criterion. Arguments select a
// subset of criteria by number; none runs all of them.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "support/dense_simplex_oracle.hpp"
#include "support/random_models.hpp"
#include "xbsched/cli/run.hpp"
#include "xbsched/core/catalog.hpp"
#include "xbsched/core/error.hpp"
#include "xbsched/datagen/absence.hpp"
#include "xbsched/datagen/generator.hpp"
#include "xbsched/datagen/preferences.hpp"
#include "xbsched/datagen/scenarios.hpp"
#include "xbsched/evaluation/evaluation.hpp"
#include "xbsched/formulation/extensive_form.hpp"
#include "xbsched/formulation/second_stage.hpp"
#include "xbsched/formulation/solve.hpp"
#include "xbsched/milp/lp_solver.hpp"
#include "xbsched/recourse/recourse.hpp"

using namespace xb;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v, int digits = 4) { return format_number(v, digits); }

milp::SolveParams exact_params() {
  milp::SolveParams p;
  p.relative_gap = 0.0;
  p.absolute_gap = 1e-7;
  return p;
}

milp::SolveParams desk_params() {
  milp::SolveParams p;
  p.relative_gap = 0.01;
  p.time_limit_seconds = 120.0;
  return p;
}

// Identity bookkeeping shared by every solve of the run.
struct IdentityLedger {
  long solves = 0;
  long failures = 0;

  void record(const Instance& in, const FormulationConfig& fc, const StochasticSolveResult& r) {
    if (!r.milp.has_incumbent()) return;
    ++solves;
    Instance trained = in;
    trained.scenarios = effective_scenarios(in, fc);
    const bool ok = r.identity_holds && ceiling_identity_check(trained, r.first_stage, r.second_stage, fc.preference);
    if (!ok) ++failures;
  }
};

IdentityLedger identity;

StochasticSolveResult tracked_solve(const Instance& in, const FormulationConfig& fc, const milp::SolveParams& p) {
  StochasticSolveResult r = solve_extensive_form(in, fc, p);
  identity.record(in, fc, r);
  return r;
}

Outcome oracle_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(4242);
  int compared = 0, agreed = 0, infeasible_agreed = 0, infeasible = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 1; compared < 200; ++seed) {
    TinyConfig tc;
    tc.num_employees = 1 + static_cast<int>(rng() % 4);
    tc.periods = 2 + static_cast<int>(rng() % 5);
    tc.num_duties = 1 + static_cast<int>(rng() % 5);
    tc.scenarios_per_day = 1 + static_cast<int>(rng() % 2);
    tc.max_demand = 1 + static_cast<int>(rng() % 3);
    const Instance in = generate_tiny_instance(tc, 5000 + seed);
    FormulationConfig fc;
    fc.preference = seed % 2 == 0 ? PreferenceMode::kWith : PreferenceMode::kWithout;
    const auto en = enumerate_first_stage(in, fc.preference, false);
    if (!en.feasible) {
      ++infeasible;
      try {
        if (solve_extensive_form(in, fc, exact_params()).milp.status == milp::MilpStatus::kInfeasible)
          ++infeasible_agreed;
      } catch (const InfeasibleInstance&) {
        ++infeasible_agreed;
      }
      continue;
    }
    ++compared;
    const auto r = tracked_solve(in, fc, exact_params());
    const double want = en.best_objective.to_double();
    const double err = std::abs(r.objective - want) / (1.0 + std::abs(want));
    worst = std::max(worst, err);
    if (r.milp.status == milp::MilpStatus::kOptimal && err <= 1e-6) ++agreed;
  }
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = agreed == compared && infeasible_agreed == infeasible && secs < 600.0;
  o.detail = std::to_string(agreed) + "/" + std::to_string(compared) + " optima agree, " +
             std::to_string(infeasible_agreed) + "/" + std::to_string(infeasible) +
             " infeasible agree, worst relative error " + fmt(worst, 12) + ", " + fmt(secs, 1) + " s";
  return o;
}

Outcome worked_examples() {
  std::vector<std::string> failed;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) failed.push_back(what);
  };

  auto scores = day_of_week_scores(modal_ranking());
  std::sort(scores.begin(), scores.end(), std::greater<>());
  expect(scores == std::array<int, 7>{13, 12, 9, 7, 7, 5, 3}, "day-of-week scores");

  std::array<Whiskers, 7> w{};
  for (auto& x : w) x = {0.05, 0.11};
  w[0] = {0.022, 0.154};
  w[3] = {0.038, 0.171};
  const AbsenceRateGrid grid = grid_from_whiskers(w);
  const double h42 = grid.at(Weekday::kWednesday, 2);
  expect(std::abs(h42 - 0.060) <= 0.0005, "h(Wednesday, 2) = " + fmt(h42, 6));
  expect(std::abs(grid.at(Weekday::kSunday, 7) - 0.154) <= 1e-12, "h(Sunday, 7)");

  PreferenceProfile prof;
  prof.scores.push_back(modal_ranking());
  const auto q = assign_absence_probabilities(grid, prof, Horizon{14, 24});
  expect(q[0][3] == q[0][10], "q on days 4 and 11 differ");
  expect(q[0][3] == Probability::from_double(h42), "q on day 4 differs from h(Wednesday, 2)");

  const auto sc = assemble_scenarios(0, {240.0}, {uniform_shape(24)});
  expect(sc.size() == 1 && sc[0].demand == std::vector<int>(24, 10), "uniform shape demand from 240");

  Outcome o;
  o.pass = failed.empty();
  if (o.pass) {
    o.detail = "scores 13,12,9,7,7,5,3; h(Wed,2) = " + fmt(h42, 4) + "; h(Sun,7) = 0.154; demand 24 x 10";
  } else {
    for (const auto& f : failed) o.detail += (o.detail.empty() ? "" : "; ") + f;
  }
  return o;
}

Outcome duty_catalog() {
  const auto duties = build_duty_catalog();
  int bad = 0;
  for (const auto& d : duties) {
    int covered = 0;
    for (auto c : d.coverage) covered += c;
    const Rational rule = Rational(8) + Rational(3, 2) * Rational(std::max(0, d.work_hours - 8)) +
                          Rational(1, 2) * Rational(d.pause_hours);
    const bool ok = d.span_hours <= 12 && d.work_hours >= 8 && d.work_hours <= 10 &&
                    d.span_hours == d.work_hours + d.pause_hours && covered == d.work_hours && d.cost == rule &&
                    d.cost >= Rational(8) && d.cost <= Rational(11);
    if (!ok) ++bad;
  }
  Outcome o;
  o.pass = bad == 0 && !duties.empty();
  o.detail = std::to_string(duties.size() - bad) + "/" + std::to_string(duties.size()) + " duties satisfy the rules";
  return o;
}

double min_spread(const GenConfig& c) {
  double spread = 1.0;
  for (const auto& w : absence_grid(c).whiskers) spread = std::min(spread, w.high - w.low);
  return spread;
}

struct DeskRun {
  int instances = 0;
  // criterion 5
  int vss_ok = 0, evpi_ok = 0;
  double worst_seconds = 0.0;
  std::string vss_note;
  // criterion 6
  std::vector<EvaluationReport> with, without;
};

DeskRun run_desk_suite() {
  DeskRun d;
  const milp::SolveParams p = desk_params();
  EvaluationConfig held;
  held.workers = 1;
  EvaluationConfig same = held;
  same.cross_eval = false;
  double min_vss_margin = 1e300, min_evpi_margin = 1e300;
  for (std::uint64_t seed = 1; d.instances < 20; ++seed) {
    const GenConfig c = desk_scale_config(seed);
    if (min_spread(c) < 0.1) continue;
    const auto t0 = std::chrono::steady_clock::now();
    const Instance in = generate_instance(c);
    const ScenarioSet eval = generate_heldout_scenarios(c, 100, seed);

    FormulationConfig with_fc, without_fc;
    without_fc.preference = PreferenceMode::kWithout;
    const auto sw = tracked_solve(in, with_fc, p);
    const auto swo = tracked_solve(in, without_fc, p);
    if (!sw.milp.has_incumbent() || !swo.milp.has_incumbent()) throw SolverLimit("desk solve without incumbent");
    d.with.push_back(evaluate_first_stage(in, sw.first_stage, eval, PreferenceMode::kWith));
    d.without.push_back(evaluate_first_stage(in, swo.first_stage, eval, PreferenceMode::kWith));

    SolvedEvaluation in_sample;
    in_sample.solve = sw;
    in_sample.report = evaluate_first_stage(in, sw.first_stage, in.scenarios, PreferenceMode::kWith);
    in_sample.report.solver = solver_stats(sw, p);
    const auto v = compute_vss(in, in.scenarios, p, PreferenceMode::kWith, same, in_sample);
    const auto e = compute_evpi(in, in.scenarios, p, PreferenceMode::kWith, same, in_sample);
    const double vm = v.vss.to_double() + v.gap_allowance;
    const double em = e.evpi.to_double() + e.gap_allowance;
    min_vss_margin = std::min(min_vss_margin, vm);
    min_evpi_margin = std::min(min_evpi_margin, em);
    d.vss_ok += vm >= -1e-9 ? 1 : 0;
    d.evpi_ok += em >= -1e-9 ? 1 : 0;
    d.worst_seconds = std::max(d.worst_seconds, seconds_since(t0));
    ++d.instances;
  }
  d.vss_note = "min VSS + allowance " + fmt(min_vss_margin) + ", min EVPI + allowance " + fmt(min_evpi_margin);
  return d;
}

Outcome sp_inequalities(const DeskRun& d) {
  Outcome o;
  o.pass = d.instances >= 20 && d.vss_ok == d.instances && d.evpi_ok == d.instances && d.worst_seconds <= 120.0;
  o.detail = std::to_string(d.instances) + " instances, VSS ok " + std::to_string(d.vss_ok) + ", EVPI ok " +
             std::to_string(d.evpi_ok) + ", " + d.vss_note + ", slowest " + fmt(d.worst_seconds, 1) + " s";
  return o;
}

Outcome preference_effect(const DeskRun& d) {
  const EvaluationReport mw = mean_report(d.with), mo = mean_report(d.without);
  const double sw_w = mw.social_welfare.to_double(), sw_o = mo.social_welfare.to_double();
  const double cs_w = mw.cancelled_service_hours.to_double(), cs_o = mo.cancelled_service_hours.to_double();
  int sw_wins = 0, cs_wins = 0;
  for (std::size_t i = 0; i < d.with.size(); ++i) {
    sw_wins += d.with[i].social_welfare > d.without[i].social_welfare ? 1 : 0;
    cs_wins += d.with[i].cancelled_service_hours < d.without[i].cancelled_service_hours ? 1 : 0;
  }
  Outcome o;
  o.pass = d.instances >= 20 && sw_w > sw_o && cs_w < cs_o;
  o.detail = "mean S.W. " + fmt(sw_w) + " vs " + fmt(sw_o) + " (higher on " + std::to_string(sw_wins) + "/" +
             std::to_string(d.with.size()) + "), mean C.S. " + fmt(cs_w) + " vs " + fmt(cs_o) + " (lower on " +
             std::to_string(cs_wins) + "/" + std::to_string(d.with.size()) + ")";
  return o;
}

Outcome table_arithmetic() {
  auto report = [](double cs, double sw) {
    EvaluationReport r;
    r.cost = Rational(100);
    r.cancelled_service_hours = Rational(static_cast<std::int64_t>(std::llround(cs * 100)), 100);
    r.social_welfare = Rational(static_cast<std::int64_t>(std::llround(sw * 100)), 100);
    return r;
  };
  const Deltas d = percentage_deltas(report(38.6, 4.34), report(30.5, 5.94));
  const double cs = d.cancelled_service.value_or(NAN), sw = d.social_welfare.value_or(NAN);
  Outcome o;
  o.pass = std::abs(cs - 21.14) <= 0.5 && std::abs(sw - 37.21) <= 0.5 && std::abs(cs - 21.0) < 0.05 &&
           std::abs(sw - 36.9) < 0.05;
  o.detail = "C.S. " + fmt(cs, 3) + "% (reference 21.14), S.W. " + fmt(sw, 3) + "% (reference 37.21)";
  return o;
}

Outcome solver_correctness() {
  std::mt19937_64 rng(31337);
  int lp_ok = 0, lp_total = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int rows = 2 + static_cast<int>(rng() % 15);
    const int cols = 2 + static_cast<int>(rng() % 29);
    const milp::MilpModel m = testing::random_lp(rng, rows, cols);
    const auto want = testing::dense_simplex(m);
    const milp::LpResult got = milp::solve_lp(m);
    ++lp_total;
    using S = testing::OracleResult::Status;
    bool ok = false;
    if (want.status == S::kOptimal) {
      ok = got.status == milp::LpStatus::kOptimal &&
           std::abs(got.objective - want.objective) <= 1e-6 * (1.0 + std::abs(want.objective));
    } else if (want.status == S::kUnbounded) {
      ok = got.status == milp::LpStatus::kUnbounded;
    } else {
      ok = got.status == milp::LpStatus::kInfeasible;
    }
    lp_ok += ok ? 1 : 0;
  }
  int ip_ok = 0, ip_total = 0;
  milp::SolveParams p;
  p.relative_gap = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const milp::MilpModel m = testing::random_ip(rng, 2 + trial % 4, 3 + trial % 4, 3);
    const double truth = testing::brute_force_ip(m);
    const milp::MilpSolution s = milp::solve_milp(m, p);
    ++ip_total;
    bool ok = false;
    if (std::isinf(truth)) {
      ok = s.status == milp::MilpStatus::kInfeasible;
    } else {
      ok = s.status == milp::MilpStatus::kOptimal && std::abs(s.objective - truth) <= 1e-6 * (1.0 + std::abs(truth));
    }
    ip_ok += ok ? 1 : 0;
  }
  Outcome o;
  o.pass = lp_ok == lp_total && ip_ok == ip_total;
  o.detail = "LP " + std::to_string(lp_ok) + "/" + std::to_string(lp_total) + ", MILP " + std::to_string(ip_ok) +
             "/" + std::to_string(ip_total);
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / ("xbsched_determinism_" + std::to_string(::getpid()));
  fs::remove_all(root);
  cli::RunConfig base;
  base.generator = desk_scale_config(7);
  base.solve = desk_params();
  base.solve.time_limit_seconds = std::numeric_limits<double>::infinity();
  base.evaluation.num_eval_scenarios = 50;
  std::ostringstream sink;
  for (const char* run : {"a", "b"}) {
    cli::RunConfig c = base;
    c.out = root / run;
    for (const char* cmd : {"generate", "solve", "evaluate"}) {
      c.command = cmd;
      if (c.command == "solve" || c.command == "evaluate") c.instances = {c.out / "instance.json"};
      if (c.command == "evaluate") c.solution = c.out / "solution.json";
      if (cli::run(c, sink, sink) != cli::kOk) {
        fs::remove_all(root);
        return {false, std::string("command ") + cmd + " failed: " + sink.str()};
      }
    }
  }
  int files = 0, differing = 0;
  for (const auto& entry : fs::directory_iterator(root / "a")) {
    ++files;
    const fs::path other = root / "b" / entry.path().filename();
    if (!fs::exists(other) || slurp(entry.path()) != slurp(other)) ++differing;
  }
  fs::remove_all(root);
  Outcome o;
  o.pass = files >= 6 && differing == 0;
  o.detail = std::to_string(files - differing) + "/" + std::to_string(files) + " artifacts byte-identical";
  return o;
}

Outcome model_size() {
  std::mt19937_64 rng(1010);
  int ok = 0;
  for (int i = 0; i < 10; ++i) {
    TinyConfig tc;
    tc.num_employees = 1 + static_cast<int>(rng() % 6);
    tc.periods = 2 + static_cast<int>(rng() % 10);
    tc.num_duties = 1 + static_cast<int>(rng() % 8);
    tc.scenarios_per_day = 1 + static_cast<int>(rng() % 4);
    tc.max_known_demand = 0;
    Instance in = generate_tiny_instance(tc, 700 + i);
    // Uneven scenario counts across days.
    for (int j = 0; j < in.num_days(); ++j) {
      const int keep = 1 + static_cast<int>(rng() % in.scenarios[j].size());
      in.scenarios[j].resize(keep);
      for (auto& s : in.scenarios[j]) s.probability = Rational(1, keep);
    }
    const ExtensiveForm f = build_extensive_form(in);
    const ModelSize want = predicted_size(in, {});
    ok += f.model.num_variables() == want.columns && f.model.num_constraints() == want.rows ? 1 : 0;
  }
  const nlohmann::json doc = cli::read_config_file(fs::path(XBSCHED_SOURCE_DIR) / "presets" / "division_10.toml");
  cli::RunConfig c;
  cli::apply_config(doc, c);
  const Instance big = generate_instance(c.generator);
  const ModelSize size = predicted_size(big, {});
  Outcome o;
  o.pass = ok == 10 && size.columns >= 100000 && size.columns < 1000000;
  o.detail = std::to_string(ok) + "/10 shapes match; division 10 scale: " + std::to_string(size.columns) +
             " variables, " + std::to_string(size.rows) + " rows";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));
  auto on = [&](int k) { return wanted.empty() || wanted.count(k) > 0; };

  bool all = true;
  auto report = [&](int k, const std::string& name, const Outcome& o) {
    std::cout << "criterion " << k << " " << name << ": " << (o.pass ? "PASS" : "FAIL") << " (" << o.detail << ")"
              << std::endl;
    all = all && o.pass;
  };
  auto guarded = [&](int k, const std::string& name, const std::function<Outcome()>& f) {
    if (!on(k)) return;
    try {
      report(k, name, f());
    } catch (const std::exception& e) {
      report(k, name, {false, std::string("exception: ") + e.what()});
    }
  };

  guarded(1, "oracle equivalence", oracle_equivalence);
  guarded(3, "worked examples", worked_examples);
  guarded(4, "duty catalog", duty_catalog);

  if (on(5) || on(6) || on(2)) {
    DeskRun desk;
    std::string failure;
    try {
      desk = run_desk_suite();
    } catch (const std::exception& e) {
      failure = e.what();
    }
    auto desk_outcome = [&](const std::function<Outcome()>& f) {
      return failure.empty() ? f() : Outcome{false, "desk suite failed: " + failure};
    };
    if (on(5)) report(5, "stochastic-programming inequalities", desk_outcome([&] { return sp_inequalities(desk); }));
    if (on(6)) report(6, "directional preference effect", desk_outcome([&] { return preference_effect(desk); }));
  }

  guarded(7, "table arithmetic", table_arithmetic);
  guarded(8, "solver correctness", solver_correctness);
  guarded(9, "determinism", determinism);
  guarded(10, "model size", model_size);

  if (on(2)) {
    Outcome o;
    o.pass = identity.solves > 0 && identity.failures == 0;
    o.detail = std::to_string(identity.solves - identity.failures) + "/" + std::to_string(identity.solves) +
               " returned solutions satisfy the identity in every block";
    report(2, "ceiling identity", o);
  }
  return all ? 0 : 1;
}
