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

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "xbsched/cli/run.hpp"
#include "xbsched/core/error.hpp"

int main(int argc, char** argv) {
  using namespace xb::cli;
  CLI::App app{"Reserve-staff days-off scheduling under endogenous absences"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers, count, trials;
  std::optional<double> time_limit, gap;
  std::string out = "out", solution, size;
  std::vector<std::string> instances;
  bool timing = false;

  const char* names[] = {"generate", "solve", "evaluate", "vss", "evpi", "scenario-study", "oracle-check"};
  const char* about[] = {"generate instances from the generator section",
                         "solve the extensive form and save the first stage",
                         "score a saved first stage on held-out scenarios",
                         "stochastic against expected-value first stages",
                         "stochastic against wait-and-see solutions",
                         "compare training scenario counts",
                         "compare the solver with exhaustive enumeration on toy instances"};
  for (int i = 0; i < 7; ++i) {
    CLI::App* sub = app.add_subcommand(names[i], about[i]);
    sub->add_option("--config", config_path, "TOML or JSON run config");
    sub->add_option("--seed", seed, "generator seed (first of --count seeds)");
    sub->add_option("--workers", workers, "evaluation worker threads");
    sub->add_option("--time-limit", time_limit, "seconds per MILP solve");
    sub->add_option("--gap", gap, "relative optimality gap");
    sub->add_option("--out", out, "artifact directory")->capture_default_str();
    sub->add_option("--count", count, "number of generated instances");
    sub->add_option("--instance", instances, "instance JSON file (repeatable)");
    sub->add_flag("--timing", timing, "record wall-clock times in artifacts");
    if (std::string(names[i]) == "evaluate") sub->add_option("--solution", solution, "solution JSON file");
    if (std::string(names[i]) == "oracle-check") {
      sub->add_option("--size", size, "tiny or small");
      sub->add_option("--trials", trials, "number of random instances");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  RunConfig rc;
  rc.command = app.get_subcommands().front()->get_name();
  try {
    if (!config_path.empty()) apply_config(read_config_file(config_path), rc);
  } catch (const xb::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  }
  if (seed) rc.generator.seed = *seed;
  if (workers) rc.evaluation.workers = *workers;
  if (time_limit) rc.solve.time_limit_seconds = *time_limit;
  if (gap) rc.solve.relative_gap = *gap;
  if (count) rc.count = *count;
  if (trials) rc.oracle_trials = *trials;
  if (!size.empty()) rc.oracle_size = size;
  for (const auto& p : instances) rc.instances.emplace_back(p);
  rc.solution = solution;
  rc.out = out;
  rc.timing = timing;
  if (rc.evaluation.workers < 1 || rc.solve.relative_gap < 0 || !(rc.solve.time_limit_seconds > 0)) {
    std::cerr << "config error: --workers must be >= 1, --gap >= 0 and --time-limit > 0\n";
    return kConfigError;
  }
  return run(rc, std::cout, std::cerr);
}
