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
#include "xbsched/milp/model.hpp"

namespace xb {

// N = |E| - o_j - #off - ceil(sum_e q r x). Throws InfeasibleInstance when
// N < 0.
int duty_capacity(const Instance& instance, const FirstStageSolution& first_stage, PreferenceMode mode, int day);

// Recourse block for one (day, scenario) with the first stage fixed. The
// welfare term is left out; evaluators add it back.
milp::MilpModel build_second_stage(const Instance& instance, const FirstStageSolution& first_stage, int day,
                                   int scenario, PreferenceMode mode = PreferenceMode::kWith);

// True iff every (day, scenario) decision uses exactly the capacity N of its
// day.
bool ceiling_identity_check(const Instance& instance, const FirstStageSolution& first_stage,
                            const SecondStageSolution& solution, PreferenceMode mode = PreferenceMode::kWith);

}  // namespace xb
