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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "xbsched/core/catalog.hpp"
#include "xbsched/core/types.hpp"
#include "xbsched/datagen/absence.hpp"
#include "xbsched/datagen/preferences.hpp"
#include "xbsched/datagen/scenarios.hpp"

namespace xb {

// o_j ~ Poisson(mean of its weekday), resampled while the round-robin
// assignment (employee e on pattern e mod 7) fails known-demand coverage
// under either absence variant; after max_rejections the draw is truncated
// to the largest covered value.
struct KnownDemandConfig {
  std::array<double, kDaysPerWeek> mean_by_weekday{5.0, 9.5, 9.5, 9.5, 9.5, 9.5, 5.0};
  int max_rejections = 1000;
};

struct GenConfig {
  std::string name = "custom";
  std::uint64_t seed = 1;
  int num_employees = 50;
  Horizon horizon{14, kHourlyPeriods};
  int l = 10;  // durations per day
  int k = 10;  // shapes per day
  DurationModel durations = DurationModel::log_normal_with_medians(
      {120.0, 200.0, 200.0, 200.0, 200.0, 200.0, 120.0}, 0.12);
  ShapeSynthesisConfig shapes;
  int shape_history_weeks = 0;  // 0 = exactly k
  RankingDistribution rankings = RankingDistribution::default_synthetic();
  AbsenceHistoryConfig absence;
  std::optional<std::array<Whiskers, kDaysPerWeek>> whiskers;  // bypasses the history for the grid
  KnownDemandConfig known_demand;
  DutyGenConfig duties;
  CostCoefficients costs;
};

// The round-robin assignment used as the known-demand feasibility witness.
FirstStageSolution round_robin_assignment(int num_employees);

// The synthetic absence history and the rate grid an instance is built from.
HistoricalRates absence_history(const GenConfig& config);
AbsenceRateGrid absence_grid(const GenConfig& config);

Instance generate_instance(const GenConfig& config);

// Per day, n scenarios with probability 1/n, each from a fresh duration and
// a fresh shape drawn on streams disjoint from the training scenarios.
std::vector<std::vector<DailyScenario>> generate_heldout_scenarios(const GenConfig& config, int n,
                                                                   std::uint64_t eval_seed);

// Desk-scale family used by the experiment suites: |E| = 10, |J| = 7,
// l = k = 3 (9 scenarios per day), 18 duties.
GenConfig desk_scale_config(std::uint64_t seed);

// Random toy instances for the enumeration oracle. Duties get random cyclic
// coverage windows and rule-based costs; |J| = 7.
struct TinyConfig {
  int num_employees = 3;
  int periods = 6;
  int num_duties = 4;
  int scenarios_per_day = 2;
  int max_demand = 3;
  int max_known_demand = 1;
};

Instance generate_tiny_instance(const TinyConfig& config, std::uint64_t seed);

nlohmann::json gen_config_to_json(const GenConfig& config);
// Missing keys keep their defaults; unknown keys are rejected.
GenConfig gen_config_from_json(const nlohmann::json& doc);
std::string config_hash(const nlohmann::json& doc);

// CSV rows: day,scenario,period,demand.
std::string scenarios_to_csv(const std::vector<std::vector<DailyScenario>>& scenarios);

}  // namespace xb
