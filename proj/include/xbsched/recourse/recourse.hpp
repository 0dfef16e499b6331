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
#include <vector>

#include "xbsched/core/types.hpp"
#include "xbsched/milp/model.hpp"

namespace xb {

enum class RecourseMethod { kMilp, kEnumeration };

const char* to_string(RecourseMethod m);

struct RecourseResult {
  std::vector<int> duty_counts;    // v_w
  std::vector<int> understaffing;  // y_t
  std::vector<int> overstaffing;   // z_t
  Rational cost;                   // c1 sum y + sum c2 v
  RecourseMethod method = RecourseMethod::kMilp;

  int total_duties() const;
  int cancelled_hours() const;
  int overstaffed_hours() const;
};

// Second-stage block for a fixed duty total N: integer v, y, z; rows
// sum v <= N, sum v >= N and one demand equation per period.
milp::MilpModel build_recourse_model(const std::vector<Duty>& duties, const std::vector<int>& demand, int capacity,
                                     const Rational& c1);

// y and z as the positive and negative parts of demand - coverage.
RecourseResult recourse_from_counts(const std::vector<Duty>& duties, const std::vector<int>& demand,
                                    std::vector<int> counts, const Rational& c1, RecourseMethod method);

// Proven-optimal duty counts with sum v = N. Throws std::invalid_argument for
// N < 0 or a demand vector of the wrong length.
RecourseResult solve_recourse_exact(const std::vector<Duty>& duties, const std::vector<int>& demand, int capacity,
                                    const Rational& c1);

// Exhaustive search over every multiset of N duties; among equal costs the
// lexicographically smallest sorted duty-id sequence wins. Throws
// std::length_error beyond `max_multisets`.
RecourseResult solve_recourse_enumeration(const std::vector<Duty>& duties, const std::vector<int>& demand,
                                          int capacity, const Rational& c1,
                                          std::int64_t max_multisets = 5'000'000);

// Optimal recourse cost as a function of N for one (day, scenario), memoised.
class RecourseCache {
 public:
  explicit RecourseCache(const Instance& instance) : instance_(instance) {}

  // Scenario `s` of `scenarios[day]`; the caller must keep the same scenario
  // list for a given cache.
  const RecourseResult& get(const std::vector<std::vector<DailyScenario>>& scenarios, int day, int s,
                            int capacity);
  std::int64_t solves() const { return solves_; }

 private:
  const Instance& instance_;
  std::vector<std::vector<std::vector<std::optional<RecourseResult>>>> memo_;  // [day][s][N]
  std::int64_t solves_ = 0;
};

struct EnumerationRow {
  FirstStageSolution assignment;
  bool feasible = false;  // known-demand coverage on every day
  Rational objective;     // meaningful when feasible
};

struct EnumerationResult {
  bool feasible = false;
  FirstStageSolution best;
  Rational best_objective;
  std::vector<EnumerationRow> table;  // every assignment, in odometer order
};

// Brute force over all |P|^|E| assignments (at most 1e6, else
// std::length_error). Ties keep the first assignment in odometer order.
EnumerationResult enumerate_first_stage(const Instance& instance, PreferenceMode mode = PreferenceMode::kWith,
                                        bool keep_table = true);

// Exact objective of a first stage on a scenario set: expected recourse minus
// welfare. Returns nullopt when known demand is not covered on some day.
std::optional<Rational> first_stage_objective(const Instance& instance, const FirstStageSolution& first_stage,
                                              PreferenceMode mode, RecourseCache& cache,
                                              const std::vector<std::vector<DailyScenario>>& scenarios);

}  // namespace xb
