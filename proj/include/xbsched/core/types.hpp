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
#include <string>
#include <vector>

#include "xbsched/core/rational.hpp"

namespace xb {

inline constexpr int kDaysPerWeek = 7;
inline constexpr int kNumPatterns = 7;
inline constexpr int kHourlyPeriods = 24;

// Day index 0 of every horizon is a Sunday.
enum class Weekday : int {
  kSunday = 0,
  kMonday,
  kTuesday,
  kWednesday,
  kThursday,
  kFriday,
  kSaturday,
};

const char* weekday_name(Weekday d);

struct Horizon {
  int num_days = 14;
  int periods_per_day = kHourlyPeriods;

  int num_weeks() const { return num_days / kDaysPerWeek; }
  Weekday weekday(int day) const { return static_cast<Weekday>(day % kDaysPerWeek); }
  bool valid() const {
    return num_days > 0 && num_days % kDaysPerWeek == 0 && periods_per_day >= 1;
  }
};

// Two consecutive weekly days off, identical in every week. Pattern p is off
// on weekdays p and p+1 (mod 7): 0 = Sun-Mon, ..., 6 = Sat-Sun.
struct DaysOffPattern {
  int id = 0;
  std::array<Weekday, 2> off_days{};
  std::vector<std::uint8_t> work;  // r: 1 = scheduled to work
  std::vector<std::uint8_t> off;   // b: 1 = day off

  std::string label() const;
};

struct Duty {
  int id = 0;
  int start_period = 0;
  int work_hours = 8;
  int pause_hours = 0;
  int span_hours = 8;
  std::vector<std::uint8_t> coverage;  // a_{w,t}
  Rational cost{8};

  int overtime_hours() const { return work_hours > 8 ? work_hours - 8 : 0; }
};

struct DailyScenario {
  int day = 0;
  std::vector<int> demand;  // unknown-absence hours per period
  Rational probability{1};
};

// scores[e][p] in 1..7; each row is a permutation (7 = most preferred).
struct PreferenceProfile {
  std::vector<std::array<int, kNumPatterns>> scores;

  int num_employees() const { return static_cast<int>(scores.size()); }
};

// Absence probabilities are held as integer millionths so that sums over
// employees, and the ceiling of those sums, are exact.
inline constexpr std::int64_t kProbabilityScale = 1'000'000;

struct Probability {
  std::int64_t micros = 0;

  static Probability from_double(double p);
  double value() const { return static_cast<double>(micros) / kProbabilityScale; }
  friend bool operator==(const Probability&, const Probability&) = default;
  friend auto operator<=>(const Probability&, const Probability&) = default;
};

enum class AbsenceVariant { kPreferenceAware, kUniform };

// `with` uses q_{e,j} and the welfare term; `without` uses q_j and c3 = 0.
enum class PreferenceMode { kWith, kWithout };

inline AbsenceVariant variant_of(PreferenceMode m) {
  return m == PreferenceMode::kWith ? AbsenceVariant::kPreferenceAware : AbsenceVariant::kUniform;
}

struct AbsenceModel {
  std::vector<std::vector<Probability>> by_employee_day;  // q_{e,j}
  std::vector<Probability> by_day;                         // q_j

  Probability probability(AbsenceVariant variant, int employee, int day) const {
    return variant == AbsenceVariant::kPreferenceAware ? by_employee_day[employee][day]
                                                       : by_day[day];
  }
};

struct CostCoefficients {
  Rational c1{10};
  Rational c3{3, 4};
  double epsilon = 1e-15;
};

struct Instance {
  Horizon horizon;
  std::vector<DaysOffPattern> patterns;
  std::vector<Duty> duties;
  int num_employees = 0;
  std::vector<int> known_demand;                    // o_j
  std::vector<std::vector<DailyScenario>> scenarios;  // S_j, per day
  PreferenceProfile preferences;
  AbsenceModel absence;
  CostCoefficients costs;
  std::uint64_t seed = 0;
  std::string provenance;  // free-form: generator config hash etc.

  int num_days() const { return horizon.num_days; }
  int num_periods() const { return horizon.periods_per_day; }
  int num_patterns() const { return static_cast<int>(patterns.size()); }
  int num_duties() const { return static_cast<int>(duties.size()); }

  Rational welfare_weight(PreferenceMode m) const { return m == PreferenceMode::kWith ? costs.c3 : Rational(0); }
};

// x_{p,e} as a function: pattern_of[e] = p.
struct FirstStageSolution {
  std::vector<int> pattern_of;
};

struct RecourseDecision {
  std::vector<int> duty_counts;    // v_w
  std::vector<int> understaffing;  // y_t
  std::vector<int> overstaffing;   // z_t
};

// decisions[day][scenario]
struct SecondStageSolution {
  std::vector<std::vector<RecourseDecision>> decisions;
};

}  // namespace xb
