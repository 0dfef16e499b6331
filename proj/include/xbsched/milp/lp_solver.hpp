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
#include <memory>
#include <vector>

#include "xbsched/milp/model.hpp"

namespace xb::milp {

enum class LpStatus {
  kOptimal,
  kInfeasible,
  kUnbounded,
  kIterationLimit,
  kNumericalFailure,
};

const char* to_string(LpStatus s);

enum class BasisStatus : std::int8_t { kBasic, kAtLower, kAtUpper, kAtZero };

// Status of every structural column followed by every row logical. Can be
// fed back into LpSolver::solve to warm start a related LP.
struct LpBasis {
  std::vector<BasisStatus> status;
  bool empty() const { return status.empty(); }
};

struct LpOptions {
  double primal_tolerance = 1e-9;
  double dual_tolerance = 1e-9;
  double pivot_tolerance = 1e-9;
  long max_iterations = 1'000'000;
  int refactor_interval = 96;
  // Consecutive degenerate pivots tolerated before switching to Bland's rule.
  int degenerate_pivot_limit = 60;
};

struct LpResult {
  LpStatus status = LpStatus::kNumericalFailure;
  double objective = 0.0;
  std::vector<double> values;      // structural columns
  std::vector<double> row_duals;   // one per row, original scaling
  LpBasis basis;
  long iterations = 0;
  int bland_activations = 0;
  // Worst bound or row violation of `values` against the unscaled model.
  double max_residual = 0.0;
};

// Bounded-variable revised primal simplex. Every row i gets a logical
// s_i = a_i x with bounds taken from its relation, so the working system is
// [A | -I] (x, s) = 0 with all variables boxed. Rows are equilibrated by
// their largest coefficient before solving. The basis is factorized with a
// sparse LU and updated in product form between refactorizations.
//
// Column and row bounds may be overridden between solves, which is how the
// branch-and-bound driver applies node bounds without copying the model.
class LpSolver {
 public:
  explicit LpSolver(const MilpModel& model, LpOptions options = {});
  ~LpSolver();
  LpSolver(const LpSolver&) = delete;
  LpSolver& operator=(const LpSolver&) = delete;

  void set_column_bounds(int col, double lower, double upper);
  void set_row_bounds(int row, double lower, double upper);
  void reset_bounds();

  int num_columns() const;
  int num_rows() const;

  LpResult solve(const LpBasis* warm_start = nullptr);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Convenience wrapper: integrality is ignored.
LpResult solve_lp(const MilpModel& model, LpOptions options = {});

}  // namespace xb::milp
