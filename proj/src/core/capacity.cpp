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

#include "xbsched/core/capacity.hpp"

namespace xb {

DayCapacity day_capacity(const Instance& in, const FirstStageSolution& fs, AbsenceVariant variant, int day) {
  DayCapacity c;
  for (int e = 0; e < in.num_employees; ++e) {
    const auto& pat = in.patterns[fs.pattern_of[e]];
    if (pat.work[day]) {
      ++c.working;
      c.absence_micros += in.absence.probability(variant, e, day).micros;
    }
    if (pat.off[day]) ++c.off;
  }
  c.expected_absences = static_cast<int>(ceil_div(c.absence_micros, kProbabilityScale));
  c.duty_capacity = in.num_employees - in.known_demand[day] - c.off - c.expected_absences;
  return c;
}

int welfare_sum(const Instance& in, const FirstStageSolution& fs) {
  int s = 0;
  for (int e = 0; e < in.num_employees; ++e) s += in.preferences.scores[e][fs.pattern_of[e]];
  return s;
}

}  // namespace xb
