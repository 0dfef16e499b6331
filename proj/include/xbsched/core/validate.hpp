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

#include <string>
#include <vector>

#include "xbsched/core/types.hpp"

namespace xb {

struct InstanceViolation {
  std::string field;    // e.g. "scenarios[3]", "preferences[2]"
  std::string message;  // the broken invariant
};

// Empty iff every type invariant holds. Duty shape/cost rules are checked
// only for hourly (24-period) instances; smaller test instances carry
// hand-made duties.
std::vector<InstanceViolation> validate_instance(const Instance& instance);

// One pattern per employee, all ids in range.
std::vector<InstanceViolation> validate_first_stage(const Instance& instance,
                                                    const FirstStageSolution& first_stage);

std::string describe(const std::vector<InstanceViolation>& violations);

}  // namespace xb
