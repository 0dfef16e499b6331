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

#include <iosfwd>
#include <string>

#include "xbsched/milp/model.hpp"

namespace xb::milp {

// Writes the model in CPLEX LP text format. Names are sanitized to the LP
// identifier alphabet and long rows are wrapped below 255 characters.
void write_lp_format(const MilpModel& model, std::ostream& out);
std::string to_lp_format(const MilpModel& model);

}  // namespace xb::milp
