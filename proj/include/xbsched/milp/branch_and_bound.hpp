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
#include <functional>
#include <optional>
#include <iosfwd>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "xbsched/milp/lp_solver.hpp"
#include "xbsched/milp/model.hpp"

namespace xb::milp {

struct SolveParams {
  // 1e-4 is an optimality gap of 0.01%.
  double relative_gap = 1e-4;
  double absolute_gap = 1e-9;
  double time_limit_seconds = std::numeric_limits<double>::infinity();
  long node_limit = std::numeric_limits<long>::max();
  // 0 breaks branching ties by lowest index; any other value hashes it in.
  std::uint64_t branching_seed = 0;
  double integrality_tolerance = 1e-6;
  bool propagate = true;
  // Optional line-oriented log: "node <n> bound <b> incumbent <i> gap <g>",
  // followed by " time <seconds>" when log_time is set.
  std::ostream* log = nullptr;
  bool log_time = true;
  long log_interval = 1000;
  LpOptions lp;
  // Optional primal heuristic, called with the LP point of every node whose
  // columns of branch priority >= heuristic_priority are all integral. A
  // returned point becomes the incumbent only if it passes the full
  // feasibility check and improves the objective.
  std::function<std::optional<std::vector<double>>(const std::vector<double>&)> primal_heuristic;
  int heuristic_priority = 1;
};

enum class MilpStatus {
  kOptimal,
  kFeasible,  // a limit was hit with an incumbent in hand
  kInfeasible,
  kUnbounded,
  kNoSolution,  // a limit was hit before any incumbent was found
};

const char* to_string(MilpStatus s);

struct BoundSample {
  long node;
  double bound;
  double incumbent;
};

struct MilpSolution {
  MilpStatus status = MilpStatus::kNoSolution;
  std::vector<double> values;
  double objective = std::numeric_limits<double>::infinity();
  double best_bound = -std::numeric_limits<double>::infinity();
  double gap = std::numeric_limits<double>::infinity();
  long nodes = 0;
  long lp_iterations = 0;
  double wall_seconds = 0.0;
  // Integer-feasible LP points rejected after rounding (numerical trouble).
  long rounding_rejections = 0;
  long heuristic_calls = 0;
  std::vector<BoundSample> trajectory;

  bool has_incumbent() const { return !values.empty(); }
};

// Relative gap as reported by the solver: |incumbent - bound| / |incumbent|.
double relative_gap(double incumbent, double bound);

class InfeasibleWarmStart : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A verified starting incumbent.
struct WarmStart {
  std::vector<double> values;
  double objective = 0.0;
};

// Checks `values` against every bound, row and integrality requirement and
// throws InfeasibleWarmStart naming the worst violation on failure.
WarmStart warm_start(const MilpModel& model, std::vector<double> values);

// Best-bound branch and bound over LP relaxations. Branches on the
// most-fractional variable among those with the highest branching priority.
MilpSolution solve_milp(const MilpModel& model, const SolveParams& params = {},
                        const WarmStart* start = nullptr);

}  // namespace xb::milp
