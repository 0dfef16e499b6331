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
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "xbsched/datagen/generator.hpp"
#include "xbsched/evaluation/evaluation.hpp"
#include "xbsched/formulation/extensive_form.hpp"
#include "xbsched/formulation/solve.hpp"
#include "xbsched/milp/branch_and_bound.hpp"

namespace xb::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,        // internal error or a failed check
  kConfigError = 2,    // unparseable config, bad flag, missing file
  kInfeasible = 3,     // known demand cannot be covered
  kSolverLimit = 4,    // limit reached before any feasible point
};

const char* commands_help();

struct RunConfig {
  std::string command;
  std::vector<std::filesystem::path> instances;  // empty: generate from `generator`
  std::filesystem::path solution;                 // evaluate only
  int count = 1;                                  // generated instances, seeds seed..seed+count-1
  GenConfig generator;
  FormulationConfig formulation;
  milp::SolveParams solve;
  EvaluationConfig evaluation;
  std::vector<int> study_counts{25, 49, 100};
  std::string oracle_size = "tiny";
  int oracle_trials = 50;
  std::filesystem::path out = "out";
  bool timing = false;
};

// Reads TOML, or JSON when the file ends in .json or does not parse as
// TOML. Throws ConfigError.
nlohmann::json read_config_file(const std::filesystem::path& path);

// Sections: generator, formulation, solve, evaluation, study, oracle.
// Missing keys keep their defaults; unknown keys throw ConfigError.
void apply_config(const nlohmann::json& doc, RunConfig& config);

// Effective configuration. Worker count and timing are left out since they
// do not change any artifact.
nlohmann::json effective_config(const RunConfig& config);
std::string run_config_hash(const RunConfig& config);

// Runs one command, writing artifacts under config.out and a summary to
// `out`. Errors are reported on `err` and mapped to an ExitCode.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace xb::cli
