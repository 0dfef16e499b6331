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

#include "xbsched/core/catalog.hpp"
#include "xbsched/core/types.hpp"

namespace xb::testing {

// A minimal valid hourly instance: one scenario per day, zero demand.
inline Instance small_valid_instance(int employees = 3) {
  Instance in;
  in.horizon = Horizon{14, kHourlyPeriods};
  in.patterns = build_pattern_catalog(in.horizon);
  DutyGenConfig dc;
  dc.start_periods = {6, 14};
  in.duties = build_duty_catalog(dc);
  in.num_employees = employees;
  in.known_demand.assign(in.horizon.num_days, 0);
  in.scenarios.resize(in.horizon.num_days);
  for (int j = 0; j < in.horizon.num_days; ++j) {
    in.scenarios[j].push_back({j, std::vector<int>(kHourlyPeriods, 0), Rational(1, 2)});
    in.scenarios[j].push_back({j, std::vector<int>(kHourlyPeriods, 1), Rational(1, 2)});
  }
  for (int e = 0; e < employees; ++e) in.preferences.scores.push_back({7, 6, 5, 4, 3, 2, 1});
  in.absence.by_employee_day.assign(employees, std::vector<Probability>(in.horizon.num_days, Probability{50'000}));
  in.absence.by_day.assign(in.horizon.num_days, Probability{50'000});
  return in;
}

}  // namespace xb::testing
