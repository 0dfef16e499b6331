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

#include <vector>

#include "xbsched/core/types.hpp"

namespace xb {

// The seven patterns in fixed order Sun-Mon, Mon-Tue, ..., Sat-Sun. A
// pattern is off on every horizon day whose weekday is in its pair, so
// Sat-Sun in a Sunday-start horizon is off on the first day as well.
std::vector<DaysOffPattern> build_pattern_catalog(const Horizon& horizon);

// 8 regular hours at 1, overtime hours at 1.5, unpaid pause hours at 0.5.
// Throws std::invalid_argument outside work 8..10, pause 0..3.
Rational duty_cost(int work_hours, int pause_hours);

struct DutyGenConfig {
  int periods_per_day = kHourlyPeriods;
  std::vector<int> start_periods;  // empty = every period of the day
  std::vector<int> work_hours{8, 9, 10};
  std::vector<int> pause_hours{0, 3};
  int max_span_hours = 12;
};

// Enumerates (start, work, pause) with the pause centered in the duty and
// coverage wrapping past midnight onto the early periods of the same day.
// Duties are ordered by start, then work, then pause. Throws ConfigError if
// nothing survives the span limit.
std::vector<Duty> build_duty_catalog(const DutyGenConfig& config = {});

// Single duty with the catalog's layout rules.
Duty make_duty(int id, int start_period, int work_hours, int pause_hours,
               int periods_per_day = kHourlyPeriods);

}  // namespace xb
