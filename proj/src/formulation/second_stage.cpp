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

#include "xbsched/formulation/second_stage.hpp"

#include <numeric>

#include "xbsched/core/capacity.hpp"
#include "xbsched/core/error.hpp"
#include "xbsched/recourse/recourse.hpp"

namespace xb {

int duty_capacity(const Instance& in, const FirstStageSolution& fs, PreferenceMode mode, int day) {
  const DayCapacity c = day_capacity(in, fs, variant_of(mode), day);
  if (c.duty_capacity < 0) {
    throw InfeasibleInstance("day " + std::to_string(day) + ": duty capacity N = " + std::to_string(c.duty_capacity) +
                             " is negative (first stage does not fit the instance)");
  }
  return c.duty_capacity;
}

milp::MilpModel build_second_stage(const Instance& in, const FirstStageSolution& fs, int day, int scenario,
                                   PreferenceMode mode) {
  const int n = duty_capacity(in, fs, mode, day);
  return build_recourse_model(in.duties, in.scenarios.at(day).at(scenario).demand, n, in.costs.c1);
}

bool ceiling_identity_check(const Instance& in, const FirstStageSolution& fs, const SecondStageSolution& sol,
                            PreferenceMode mode) {
  if (static_cast<int>(sol.decisions.size()) != in.num_days()) return false;
  for (int j = 0; j < in.num_days(); ++j) {
    const int n = day_capacity(in, fs, variant_of(mode), j).duty_capacity;
    for (const auto& d : sol.decisions[j]) {
      if (std::accumulate(d.duty_counts.begin(), d.duty_counts.end(), 0) != n) return false;
    }
  }
  return true;
}

}  // namespace xb
