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

#include <doctest.h>

#include <cmath>
#include <random>

#include "support/fixtures.hpp"
#include "xbsched/core/capacity.hpp"
#include "xbsched/core/error.hpp"
#include "xbsched/datagen/generator.hpp"
#include "xbsched/formulation/extensive_form.hpp"
#include "xbsched/formulation/second_stage.hpp"
#include "xbsched/formulation/solve.hpp"
#include "xbsched/milp/lp_format.hpp"
#include "xbsched/recourse/recourse.hpp"

using namespace xb;

namespace {

milp::SolveParams exact_params() {
  milp::SolveParams p;
  p.relative_gap = 0.0;
  p.absolute_gap = 1e-7;
  return p;
}

bool close(double a, double b) { return std::abs(a - b) <= 1e-6 * (1.0 + std::abs(b)); }

}  // namespace

TEST_CASE("model size matches the closed form") {
  const ModelSize div = predicted_size(7, 50, 14, 24, 201, std::vector<int>(14, 100));
  CHECK(div.columns == 348'950);
  CHECK(div.rows == 36'464);

  std::mt19937_64 rng(7);
  for (int i = 0; i < 10; ++i) {
    TinyConfig tc;
    tc.num_employees = 1 + static_cast<int>(rng() % 4);
    tc.periods = 2 + static_cast<int>(rng() % 5);
    tc.num_duties = 1 + static_cast<int>(rng() % 5);
    tc.scenarios_per_day = 1 + static_cast<int>(rng() % 3);
    tc.max_known_demand = 0;
    const Instance in = generate_tiny_instance(tc, 500 + i);
    for (auto mode : {ScenarioMode::kFull, ScenarioMode::kExpectedValue, ScenarioMode::kSingle}) {
      FormulationConfig fc;
      fc.scenarios = mode;
      const auto f = build_extensive_form(in, fc);
      const auto want = predicted_size(in, fc);
      CHECK(f.model.num_variables() == want.columns);
      CHECK(f.model.num_constraints() == want.rows);
      CHECK(f.index.num_columns() == want.columns);
      CHECK(f.model.validate().empty());
    }
  }
}

TEST_CASE("variable index is a bijection") {
  const VariableIndex idx(7, 3, 4, 5, {2, 1, 3});
  std::vector<int> seen(idx.num_columns(), 0);
  for (int e = 0; e < 3; ++e)
    for (int p = 0; p < 7; ++p) ++seen[idx.x(p, e)];
  const std::vector<int> per{2, 1, 3};
  for (int j = 0; j < 3; ++j) {
    for (int s = 0; s < per[j]; ++s) {
      for (int t = 0; t < 4; ++t) {
        ++seen[idx.y(j, s, t)];
        ++seen[idx.z(j, s, t)];
        const auto d = idx.decode(idx.z(j, s, t));
        CHECK(d.kind == VariableIndex::Kind::kZ);
        CHECK(d.a == j);
        CHECK(d.b == s);
        CHECK(d.c == t);
      }
      for (int w = 0; w < 5; ++w) ++seen[idx.v(j, s, w)];
    }
  }
  for (int c : seen) CHECK(c == 1);
  CHECK_THROWS_AS(idx.decode(idx.num_columns()), std::out_of_range);
}

TEST_CASE("single employee takes the favourite pattern") {
  Instance in = testing::small_valid_instance(1);
  for (auto& day : in.scenarios) {
    day.resize(1);
    day[0].probability = Rational(1);
    std::fill(day[0].demand.begin(), day[0].demand.end(), 0);
  }
  in.absence.by_employee_day.assign(1, std::vector<Probability>(14, Probability{0}));
  in.absence.by_day.assign(14, Probability{0});
  in.preferences.scores[0] = {2, 5, 1, 7, 3, 4, 6};
  const auto r = solve_extensive_form(in, {}, exact_params());
  REQUIRE(r.milp.status == milp::MilpStatus::kOptimal);
  CHECK(r.first_stage.pattern_of[0] == 3);
  // Ten working days with capacity 1 each; the cheapest duty costs 8.
  CHECK(close(r.objective, 10 * 8 - 0.75 * 7));
  for (const auto& day : r.second_stage.decisions)
    for (const auto& d : day) {
      for (int y : d.understaffing) CHECK(y == 0);
    }
}

TEST_CASE("extensive form matches the enumerator on tiny instances") {
  int checked = 0;
  for (int i = 0; i < 24; ++i) {
    TinyConfig tc;
    tc.num_employees = 1 + i % 3;
    tc.periods = 2 + i % 5;
    tc.num_duties = 1 + i % 4;
    tc.scenarios_per_day = 1 + i % 2;
    const Instance in = generate_tiny_instance(tc, 900 + i);
    for (auto mode : {PreferenceMode::kWith, PreferenceMode::kWithout}) {
      const auto en = enumerate_first_stage(in, mode, false);
      FormulationConfig fc;
      fc.preference = mode;
      if (!en.feasible) {
        bool infeasible = false;
        try {
          infeasible = solve_extensive_form(in, fc, exact_params()).milp.status == milp::MilpStatus::kInfeasible;
        } catch (const InfeasibleInstance&) {
          infeasible = true;
        }
        CHECK(infeasible);
        continue;
      }
      for (bool strengthen : {true, false}) {
        const auto r = solve_extensive_form(in, fc, exact_params(), {strengthen, strengthen});
        REQUIRE(r.milp.status == milp::MilpStatus::kOptimal);
        CHECK(close(r.objective, en.best_objective.to_double()));
        CHECK(r.identity_holds);
        ++checked;
      }
    }
  }
  CHECK(checked > 20);
}

TEST_CASE("second stage capacity") {
  Instance in = testing::small_valid_instance(10);
  const int day = 3;  // a Wednesday
  in.known_demand[day] = 2;
  FirstStageSolution fs;
  for (int e = 0; e < 10; ++e) fs.pattern_of.push_back(e < 3 ? 3 : 0);  // three off on Wednesday
  for (int e = 3; e < 9; ++e) in.absence.by_employee_day[e][day] = Probability{200'000};
  in.absence.by_employee_day[9][day] = Probability{0};
  CHECK(duty_capacity(in, fs, PreferenceMode::kWith, day) == 3);

  // Zero demand still places exactly N duties at the cheapest cost.
  const auto m = build_second_stage(in, fs, day, 0);
  const auto sol = milp::solve_milp(m, exact_params());
  REQUIRE(sol.status == milp::MilpStatus::kOptimal);
  CHECK(close(sol.objective, 24.0));

  in.known_demand[day] = 9;
  CHECK_THROWS_AS(duty_capacity(in, fs, PreferenceMode::kWith, day), InfeasibleInstance);
}

TEST_CASE("ceiling identity") {
  const Instance in = generate_tiny_instance(TinyConfig{}, 41);
  const auto r = solve_extensive_form(in, {}, exact_params());
  REQUIRE(r.milp.has_incumbent());
  CHECK(ceiling_identity_check(in, r.first_stage, r.second_stage));
  auto bumped = r.second_stage;
  bumped.decisions[2][0].duty_counts[0] += 1;
  CHECK_FALSE(ceiling_identity_check(in, r.first_stage, bumped));

  // An absence sum of exactly 2.0 rounds to 2, not 3.
  Instance exact = testing::small_valid_instance(5);
  FirstStageSolution fs{{0, 0, 0, 0, 0}};
  for (int e = 0; e < 5; ++e) exact.absence.by_employee_day[e][4] = Probability{400'000};
  const auto cap = day_capacity(exact, fs, AbsenceVariant::kPreferenceAware, 4);
  CHECK(cap.expected_absences == 2);
  CHECK(cap.duty_capacity == 3);
}

TEST_CASE("duty-count rows admit only the capacity value for integral x") {
  const Instance in = generate_tiny_instance(TinyConfig{4, 3, 2, 1, 2, 0}, 77);
  const auto f = build_extensive_form(in);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    FirstStageSolution fs;
    for (int e = 0; e < in.num_employees; ++e) fs.pattern_of.push_back(static_cast<int>(rng() % 7));
    std::vector<double> x(f.model.num_variables(), 0.0);
    for (int e = 0; e < in.num_employees; ++e) x[f.index.x(fs.pattern_of[e], e)] = 1.0;
    for (int j = 0; j < in.num_days(); ++j) {
      const auto cap = day_capacity(in, fs, AbsenceVariant::kPreferenceAware, j);
      int admitted = 0, value = -1;
      for (int n = 0; n <= in.num_employees; ++n) {
        std::vector<double> v = x;
        v[f.index.v(j, 0, 0)] = n;
        bool ok = true;
        for (int row = 0; row < f.model.num_constraints(); ++row) {
          const auto& c = f.model.constraint(row);
          if (c.name != "cap_ub_" + std::to_string(j) + "_0" && c.name != "cap_lb_" + std::to_string(j) + "_0") continue;
          const double a = f.model.row_activity(row, v);
          ok = ok && (c.relation == milp::Relation::kLessEqual ? a <= c.rhs : a >= c.rhs);
        }
        if (ok) {
          ++admitted;
          value = n;
        }
      }
      if (cap.duty_capacity >= 0) {
        CHECK(admitted == 1);
        CHECK(value == cap.duty_capacity);
      } else {
        CHECK(admitted == 0);
      }
    }
  }
}

TEST_CASE("without mode ignores preferences") {
  Instance in = generate_tiny_instance(TinyConfig{}, 12);
  FormulationConfig fc;
  fc.preference = PreferenceMode::kWithout;
  const std::string before = milp::to_lp_format(build_extensive_form(in, fc).model);
  for (auto& row : in.preferences.scores) std::reverse(row.begin(), row.end());
  const std::string after = milp::to_lp_format(build_extensive_form(in, fc).model);
  CHECK(before == after);
  fc.preference = PreferenceMode::kWith;
  CHECK(milp::to_lp_format(build_extensive_form(in, fc).model) != before);
}

TEST_CASE("objective decomposes into per-block recourse") {
  for (std::uint64_t seed : {5u, 6u, 7u}) {
    const Instance in = generate_tiny_instance(TinyConfig{3, 5, 4, 2, 3, 1}, seed);
    if (!known_demand_precheck(in, PreferenceMode::kWith).empty()) continue;
    const auto r = solve_extensive_form(in, {}, exact_params());
    if (r.milp.status != milp::MilpStatus::kOptimal) continue;
    double total = -in.costs.c3.to_double() * welfare_sum(in, r.first_stage);
    for (int j = 0; j < in.num_days(); ++j) {
      for (int s = 0; s < static_cast<int>(in.scenarios[j].size()); ++s) {
        const auto block = milp::solve_milp(build_second_stage(in, r.first_stage, j, s), exact_params());
        REQUIRE(block.status == milp::MilpStatus::kOptimal);
        total += in.scenarios[j][s].probability.to_double() * block.objective;
      }
    }
    CHECK(close(r.objective, total));
  }
}

TEST_CASE("scenario modes") {
  Instance in = testing::small_valid_instance(2);
  FormulationConfig ev;
  ev.scenarios = ScenarioMode::kExpectedValue;
  const auto mean = effective_scenarios(in, ev);
  REQUIRE(mean[0].size() == 1);
  CHECK(mean[0][0].probability == Rational(1));
  int total = 0;
  for (int d : mean[0][0].demand) total += d;
  CHECK(total == 12);  // half of 24 periods at demand 1

  FormulationConfig single;
  single.scenarios = ScenarioMode::kSingle;
  single.single_scenario = 1;
  const auto one = effective_scenarios(in, single);
  CHECK(one[5][0].demand == in.scenarios[5][1].demand);
  CHECK(one[5][0].probability == Rational(1));
  single.single_scenario = 2;
  CHECK_THROWS_AS(effective_scenarios(in, single), std::out_of_range);
}

TEST_CASE("known demand precheck") {
  Instance in = testing::small_valid_instance(3);
  CHECK(known_demand_precheck(in, PreferenceMode::kWith).empty());
  in.known_demand[2] = 3;  // three employees each absent 5% of the time
  CHECK_FALSE(known_demand_precheck(in, PreferenceMode::kWith).empty());
  CHECK_THROWS_AS(build_extensive_form(in), InfeasibleInstance);

  in.known_demand.assign(14, 0);
  in.absence.by_employee_day.assign(3, std::vector<Probability>(14, Probability{100'000}));
  for (int j = 0; j < 7; ++j) in.known_demand[j] = 2;  // 14 a week against 3 x 5 x 0.9
  const auto issues = known_demand_precheck(in, PreferenceMode::kWith);
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].rfind("week 0", 0) == 0);
}
