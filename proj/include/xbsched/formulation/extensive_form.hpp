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
#include <string>
#include <vector>

#include "xbsched/core/types.hpp"
#include "xbsched/milp/model.hpp"

namespace xb {

// kExpectedValue replaces each day's scenarios by their probability-weighted
// mean (largest-remainder integerized, probability 1); kSingle keeps only
// scenario `single_scenario` of every day.
enum class ScenarioMode { kFull, kExpectedValue, kSingle };

const char* to_string(ScenarioMode m);
const char* to_string(PreferenceMode m);

struct FormulationConfig {
  PreferenceMode preference = PreferenceMode::kWith;
  ScenarioMode scenarios = ScenarioMode::kFull;
  int single_scenario = 0;
};

// The scenario lists the model is built over.
std::vector<std::vector<DailyScenario>> effective_scenarios(const Instance& instance, const FormulationConfig& config);

// Column layout: x first (employee-major), then per (day, scenario) a block
// of y (|T|), z (|T|) and v (|W|).
class VariableIndex {
 public:
  enum class Kind { kX, kY, kZ, kV };
  struct Entry {
    Kind kind;
    int a;  // x: pattern; y/z/v: day
    int b;  // x: employee; y/z/v: scenario
    int c;  // y/z: period; v: duty
  };

  VariableIndex() = default;
  VariableIndex(int patterns, int employees, int periods, int duties, const std::vector<int>& scenarios_per_day);

  int x(int p, int e) const { return e * patterns_ + p; }
  int y(int j, int s, int t) const { return block(j, s) + t; }
  int z(int j, int s, int t) const { return block(j, s) + periods_ + t; }
  int v(int j, int s, int w) const { return block(j, s) + 2 * periods_ + w; }

  int num_columns() const { return num_columns_; }
  int num_days() const { return static_cast<int>(day_offset_.size()); }
  int num_scenarios(int j) const { return scenarios_per_day_[j]; }
  Entry decode(int column) const;

 private:
  int block(int j, int s) const { return first_block_ + (day_offset_[j] + s) * block_size_; }

  int patterns_ = 0, employees_ = 0, periods_ = 0, duties_ = 0;
  int block_size_ = 0, first_block_ = 0, num_columns_ = 0;
  std::vector<int> scenarios_per_day_, day_offset_;
};

struct ModelSize {
  std::int64_t columns = 0;
  std::int64_t rows = 0;
};

// |P||E| + sum_j |S_j|(2|T| + |W|) columns; |E| + |J| + 2 sum_j |S_j| +
// |T| sum_j |S_j| rows.
ModelSize predicted_size(int patterns, int employees, int days, int periods, int duties,
                         const std::vector<int>& scenarios_per_day);
ModelSize predicted_size(const Instance& instance, const FormulationConfig& config);

// Days whose known demand exceeds what any pattern mix can supply in
// expectation, day by day and summed over each week. Empty when no
// structural infeasibility is detected.
std::vector<std::string> known_demand_precheck(const Instance& instance, PreferenceMode mode);

struct ExtensiveForm {
  milp::MilpModel model;
  VariableIndex index;
  std::vector<std::vector<DailyScenario>> scenarios;
};

// Rows in order: one-pattern equalities, known-demand coverage, duty-count
// upper and lower bounds per (day, scenario), demand equations. Rows with
// absence probabilities are multiplied by 1e6 so every coefficient is an
// integer; the lower bound then uses a slack of one unit in 1e6 in place of
// epsilon. Throws InfeasibleInstance when the precheck fails.
ExtensiveForm build_extensive_form(const Instance& instance, const FormulationConfig& config = {});

}  // namespace xb
