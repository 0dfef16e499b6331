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

#include "xbsched/core/types.hpp"

namespace xb {

// Exact per-day quantities implied by a first stage.
struct DayCapacity {
  int working = 0;                   // sum_e sum_p r_{p,j} x_{p,e}
  int off = 0;                       // sum_e sum_p b_{p,j} x_{p,e}
  std::int64_t absence_micros = 0;   // sum_e q_{e,j} sum_p r_{p,j} x_{p,e}, in millionths
  int expected_absences = 0;         // ceil of the above
  int duty_capacity = 0;             // |E| - o_j - off - expected_absences

  // Known-demand coverage: sum_e (1 - q) r x >= o_j.
  bool covers(int known_demand) const {
    return working * kProbabilityScale - absence_micros >= known_demand * kProbabilityScale;
  }
};

DayCapacity day_capacity(const Instance& instance, const FirstStageSolution& first_stage,
                         AbsenceVariant variant, int day);

// Sum over employees of the assigned pattern's score.
int welfare_sum(const Instance& instance, const FirstStageSolution& first_stage);

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
  const std::int64_t q = a / b;
  return (a % b != 0 && ((a > 0) == (b > 0))) ? q + 1 : q;
}

}  // namespace xb
