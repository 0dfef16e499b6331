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

#include <optional>
#include <vector>

#include "xbsched/core/types.hpp"
#include "xbsched/formulation/extensive_form.hpp"
#include "xbsched/milp/branch_and_bound.hpp"

namespace xb {

// strengthen adds solver-side columns and valid rows to a private copy of
// the extensive form: employees per pattern, rounded absences per day, a
// one-hot duty capacity per day, and per block a lower bound on its cost
// from the optimal recourse at that capacity. They cut off no integer point
// of the extensive form; the returned values cover its columns only.
struct SolveOptions {
  bool warm_start = true;
  bool strengthen = true;
};

struct StochasticSolveResult {
  milp::MilpSolution milp;
  FirstStageSolution first_stage;
  SecondStageSolution second_stage;
  double objective = 0.0;       // model objective of the incumbent
  double heuristic_objective = 0.0;  // objective of the warm start, if any
  bool identity_holds = false;  // ceiling identity on the returned solution
  ModelSize size;
};

FirstStageSolution extract_first_stage(const std::vector<double>& values, const VariableIndex& index, int patterns,
                                       int employees);
SecondStageSolution extract_second_stage(const std::vector<double>& values, const VariableIndex& index,
                                         int duties);

// Local search over first stages (single-employee moves, first improvement,
// employees in index order) scored exactly with cached recourse solves.
// Returns nullopt when no start point covers known demand.
std::optional<FirstStageSolution> heuristic_first_stage(const Instance& instance, const FormulationConfig& config,
                                                        const std::vector<std::vector<DailyScenario>>& scenarios);

// Full column vector for a first stage: optimal recourse in every block.
std::vector<double> complete_solution(const Instance& instance, const ExtensiveForm& form,
                                      const FirstStageSolution& first_stage, PreferenceMode mode);

// Builds and solves the extensive form. The returned values are always a
// full extensive-form column vector. Throws InfeasibleInstance on a failed
// precheck.
StochasticSolveResult solve_extensive_form(const Instance& instance, const FormulationConfig& config,
                                           const milp::SolveParams& params, const SolveOptions& options = {});

}  // namespace xb
