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
#include <vector>

#include "xbsched/milp/model.hpp"

namespace xb::milp {

// Column bounds plus row activity bounds for one search node.
struct Domains {
  std::vector<double> col_lo, col_hi;
  std::vector<double> row_lo, row_hi;
};

// Activity-based bound tightening. Only integer columns have their bounds
// tightened. Rows whose columns are all integer with integral coefficients
// additionally get their activity range rounded to the lattice spanned by
// the gcd of the unfixed coefficients: once the fixed part of such a row is
// known, the rest can only move in steps of that gcd.
class Propagator {
 public:
  explicit Propagator(const MilpModel& model);

  Domains initial_domains() const;

  // Tightens `d` in place. Returns false when the node is proven infeasible.
  bool propagate(Domains& d, int max_passes = 20) const;

  bool row_is_integral(int row) const { return integral_row_[row] != 0; }

 private:
  bool propagate_row(int row, Domains& d, bool& changed) const;

  const MilpModel& model_;
  std::vector<std::uint8_t> integral_row_;
};

}  // namespace xb::milp
