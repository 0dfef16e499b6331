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

#include "xbsched/formulation/extensive_form.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "xbsched/core/error.hpp"
#include "xbsched/datagen/scenarios.hpp"

namespace xb {

const char* to_string(ScenarioMode m) {
  switch (m) {
    case ScenarioMode::kFull: return "full";
    case ScenarioMode::kExpectedValue: return "expected-value";
    case ScenarioMode::kSingle: return "single";
  }
  return "unknown";
}

const char* to_string(PreferenceMode m) { return m == PreferenceMode::kWith ? "with" : "without"; }

std::vector<std::vector<DailyScenario>> effective_scenarios(const Instance& in, const FormulationConfig& config) {
  switch (config.scenarios) {
    case ScenarioMode::kFull:
      return in.scenarios;
    case ScenarioMode::kSingle: {
      std::vector<std::vector<DailyScenario>> out(in.num_days());
      for (int j = 0; j < in.num_days(); ++j) {
        if (config.single_scenario < 0 || config.single_scenario >= static_cast<int>(in.scenarios[j].size())) {
          throw std::out_of_range("single scenario index out of range on day " + std::to_string(j));
        }
        DailyScenario s = in.scenarios[j][config.single_scenario];
        s.probability = Rational(1);
        out[j].push_back(std::move(s));
      }
      return out;
    }
    case ScenarioMode::kExpectedValue: {
      std::vector<std::vector<DailyScenario>> out(in.num_days());
      for (int j = 0; j < in.num_days(); ++j) {
        std::vector<double> mean(in.num_periods(), 0.0);
        for (int t = 0; t < in.num_periods(); ++t) {
          Rational m(0);
          for (const auto& s : in.scenarios[j]) m += s.probability * Rational(s.demand[t]);
          mean[t] = m.to_double();
        }
        out[j].push_back({j, integerize(mean), Rational(1)});
      }
      return out;
    }
  }
  return {};
}

VariableIndex::VariableIndex(int patterns, int employees, int periods, int duties,
                             const std::vector<int>& scenarios_per_day)
    : patterns_(patterns),
      employees_(employees),
      periods_(periods),
      duties_(duties),
      scenarios_per_day_(scenarios_per_day) {
  block_size_ = 2 * periods + duties;
  first_block_ = patterns * employees;
  int offset = 0;
  for (int n : scenarios_per_day) {
    day_offset_.push_back(offset);
    offset += n;
  }
  num_columns_ = first_block_ + offset * block_size_;
}

VariableIndex::Entry VariableIndex::decode(int col) const {
  if (col < 0 || col >= num_columns_) throw std::out_of_range("column out of range");
  if (col < first_block_) return {Kind::kX, col % patterns_, col / patterns_, 0};
  const int b = (col - first_block_) / block_size_;
  const int r = (col - first_block_) % block_size_;
  const int j = static_cast<int>(std::upper_bound(day_offset_.begin(), day_offset_.end(), b) - day_offset_.begin()) - 1;
  const int s = b - day_offset_[j];
  if (r < periods_) return {Kind::kY, j, s, r};
  if (r < 2 * periods_) return {Kind::kZ, j, s, r - periods_};
  return {Kind::kV, j, s, r - 2 * periods_};
}

ModelSize predicted_size(int patterns, int employees, int days, int periods, int duties,
                         const std::vector<int>& scenarios_per_day) {
  const std::int64_t total = std::accumulate(scenarios_per_day.begin(), scenarios_per_day.end(), std::int64_t{0});
  ModelSize s;
  s.columns = static_cast<std::int64_t>(patterns) * employees + total * (2 * periods + duties);
  s.rows = employees + days + 2 * total + total * periods;
  return s;
}

ModelSize predicted_size(const Instance& in, const FormulationConfig& config) {
  std::vector<int> per_day;
  for (int j = 0; j < in.num_days(); ++j) {
    per_day.push_back(config.scenarios == ScenarioMode::kFull ? static_cast<int>(in.scenarios[j].size()) : 1);
  }
  return predicted_size(in.num_patterns(), in.num_employees, in.num_days(), in.num_periods(), in.num_duties(),
                        per_day);
}

std::vector<std::string> known_demand_precheck(const Instance& in, PreferenceMode mode) {
  std::vector<std::string> issues;
  const AbsenceVariant var = variant_of(mode);
  const std::int64_t S = kProbabilityScale;
  // Expected presence of employee e on day j when working, in millionths.
  auto present = [&](int e, int j) { return S - in.absence.probability(var, e, j).micros; };

  for (int j = 0; j < in.num_days(); ++j) {
    std::int64_t best = 0;
    for (int e = 0; e < in.num_employees; ++e) {
      bool can_work = false;
      for (const auto& p : in.patterns) can_work = can_work || p.work[j];
      if (can_work) best += present(e, j);
    }
    if (best < in.known_demand[j] * S) {
      issues.push_back("day " + std::to_string(j) + ": known demand " + std::to_string(in.known_demand[j]) +
                       " exceeds the expected presence of all employees");
    }
  }
  for (int w = 0; w < in.horizon.num_weeks(); ++w) {
    std::int64_t need = 0, best = 0;
    for (int j = 7 * w; j < 7 * w + 7; ++j) need += in.known_demand[j] * S;
    for (int e = 0; e < in.num_employees; ++e) {
      std::int64_t top = 0;
      for (const auto& p : in.patterns) {
        std::int64_t sum = 0;
        for (int j = 7 * w; j < 7 * w + 7; ++j)
          if (p.work[j]) sum += present(e, j);
        top = std::max(top, sum);
      }
      best += top;
    }
    if (best < need) {
      issues.push_back("week " + std::to_string(w) +
                       ": total known demand exceeds the best expected weekly presence");
    }
  }
  return issues;
}

ExtensiveForm build_extensive_form(const Instance& in, const FormulationConfig& config) {
  const auto issues = known_demand_precheck(in, config.preference);
  if (!issues.empty()) {
    std::string msg = "known demand cannot be covered:";
    for (const auto& i : issues) msg += " " + i + ";";
    throw InfeasibleInstance(msg);
  }

  ExtensiveForm f;
  f.scenarios = effective_scenarios(in, config);
  const int P = in.num_patterns(), E = in.num_employees, J = in.num_days(), T = in.num_periods(),
            W = in.num_duties();
  std::vector<int> per_day;
  for (const auto& d : f.scenarios) per_day.push_back(static_cast<int>(d.size()));
  f.index = VariableIndex(P, E, T, W, per_day);

  const AbsenceVariant var = variant_of(config.preference);
  const Rational c3 = in.welfare_weight(config.preference);
  const std::int64_t S = kProbabilityScale;
  const double Sd = static_cast<double>(S);
  milp::MilpModel& m = f.model;

  for (int e = 0; e < E; ++e) {
    for (int p = 0; p < P; ++p) {
      milp::Variable v;
      v.name = "x_" + std::to_string(p) + "_" + std::to_string(e);
      v.upper = 1.0;
      v.is_integer = true;
      v.objective = (-(c3 * Rational(in.preferences.scores[e][p]))).to_double();
      v.branch_priority = 2;
      m.add_variable(std::move(v));
    }
  }
  for (int j = 0; j < J; ++j) {
    for (int s = 0; s < per_day[j]; ++s) {
      const Rational alpha = f.scenarios[j][s].probability;
      const std::string tag = "_" + std::to_string(j) + "_" + std::to_string(s) + "_";
      const double y_cost = (alpha * in.costs.c1).to_double();
      for (int t = 0; t < T; ++t) m.add_variable("y" + tag + std::to_string(t), 0.0, milp::kInf, true, y_cost);
      for (int t = 0; t < T; ++t) m.add_variable("z" + tag + std::to_string(t), 0.0, milp::kInf, true, 0.0);
      for (int w = 0; w < W; ++w) {
        milp::Variable v;
        v.name = "v" + tag + std::to_string(w);
        v.upper = std::max(0, E - in.known_demand[j]);
        v.is_integer = true;
        v.objective = (alpha * in.duties[w].cost).to_double();
        v.branch_priority = 1;
        m.add_variable(std::move(v));
      }
    }
  }

  for (int e = 0; e < E; ++e) {
    std::vector<milp::Term> row;
    for (int p = 0; p < P; ++p) row.push_back({f.index.x(p, e), 1.0});
    m.add_constraint("assign_" + std::to_string(e), row, milp::Relation::kEqual, 1.0);
  }
  for (int j = 0; j < J; ++j) {
    std::vector<milp::Term> row;
    for (int e = 0; e < E; ++e) {
      const std::int64_t present = S - in.absence.probability(var, e, j).micros;
      for (int p = 0; p < P; ++p)
        if (in.patterns[p].work[j] && present != 0) row.push_back({f.index.x(p, e), static_cast<double>(present)});
    }
    m.add_constraint("known_" + std::to_string(j), row, milp::Relation::kGreaterEqual,
                     static_cast<double>(in.known_demand[j] * S));
  }
  for (int j = 0; j < J; ++j) {
    // sum_e (b + q r) x, scaled.
    std::vector<milp::Term> x_terms;
    for (int e = 0; e < E; ++e) {
      const std::int64_t q = in.absence.probability(var, e, j).micros;
      for (int p = 0; p < P; ++p) {
        const std::int64_t coef = (in.patterns[p].off[j] ? S : 0) + (in.patterns[p].work[j] ? q : 0);
        if (coef != 0) x_terms.push_back({f.index.x(p, e), static_cast<double>(coef)});
      }
    }
    const double rhs = static_cast<double>((E - in.known_demand[j]) * S);
    for (int s = 0; s < per_day[j]; ++s) {
      std::vector<milp::Term> row;
      for (int w = 0; w < W; ++w) row.push_back({f.index.v(j, s, w), Sd});
      row.insert(row.end(), x_terms.begin(), x_terms.end());
      const std::string tag = std::to_string(j) + "_" + std::to_string(s);
      m.add_constraint("cap_ub_" + tag, row, milp::Relation::kLessEqual, rhs);
      m.add_constraint("cap_lb_" + tag, std::move(row), milp::Relation::kGreaterEqual, rhs - (Sd - 1.0));
    }
  }
  for (int j = 0; j < J; ++j) {
    for (int s = 0; s < per_day[j]; ++s) {
      for (int t = 0; t < T; ++t) {
        std::vector<milp::Term> row;
        for (int w = 0; w < W; ++w)
          if (in.duties[w].coverage[t]) row.push_back({f.index.v(j, s, w), 1.0});
        row.push_back({f.index.y(j, s, t), 1.0});
        row.push_back({f.index.z(j, s, t), -1.0});
        m.add_constraint("demand_" + std::to_string(j) + "_" + std::to_string(s) + "_" + std::to_string(t), row,
                         milp::Relation::kEqual, f.scenarios[j][s].demand[t]);
      }
    }
  }
  return f;
}

}  // namespace xb
