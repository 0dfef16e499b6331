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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "xbsched/cli/run.hpp"
#include "xbsched/core/error.hpp"
#include "xbsched/core/instance_io.hpp"

using namespace xb;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("xbsched_cli_" + std::to_string(::getpid())) / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

cli::RunConfig desk(const fs::path& out) {
  cli::RunConfig c;
  c.generator = desk_scale_config(3);
  c.solve.relative_gap = 0.01;
  c.evaluation.num_eval_scenarios = 20;
  c.out = out;
  return c;
}

int run(cli::RunConfig c, const std::string& command, std::string* output = nullptr) {
  c.command = command;
  std::ostringstream out, err;
  const int code = cli::run(c, out, err);
  if (output) *output = out.str() + err.str();
  return code;
}

}  // namespace

TEST_CASE("config files: TOML, JSON fallback and rejection") {
  const fs::path dir = scratch("config");
  write(dir / "a.toml", "[generator]\nnum_employees = 12\n[solve]\nrelative_gap = 0.02\n");
  cli::RunConfig c;
  cli::apply_config(cli::read_config_file(dir / "a.toml"), c);
  CHECK(c.generator.num_employees == 12);
  CHECK(c.solve.relative_gap == 0.02);

  write(dir / "b.cfg", "{\"evaluation\": {\"num_eval_scenarios\": 7}}");
  cli::RunConfig d;
  cli::apply_config(cli::read_config_file(dir / "b.cfg"), d);
  CHECK(d.evaluation.num_eval_scenarios == 7);

  write(dir / "bad.toml", "[solve]\nrelative_gapp = 1\n");
  CHECK_THROWS_AS(cli::apply_config(cli::read_config_file(dir / "bad.toml"), c), ConfigError);
  write(dir / "broken.toml", "[solve\n");
  CHECK_THROWS_AS(cli::read_config_file(dir / "broken.toml"), ConfigError);
  CHECK_THROWS_AS(cli::read_config_file(dir / "missing.toml"), ConfigError);

  // Worker count does not enter the hash.
  cli::RunConfig e = c;
  e.evaluation.workers = 8;
  CHECK(cli::run_config_hash(e) == cli::run_config_hash(c));
  e.generator.seed = 99;
  CHECK(cli::run_config_hash(e) != cli::run_config_hash(c));
}

TEST_CASE("presets parse") {
  for (int i = 1; i <= 10; ++i) {
    cli::RunConfig c;
    cli::apply_config(cli::read_config_file(fs::path(XBSCHED_SOURCE_DIR) / "presets" /
                                            ("division_" + std::to_string(i) + ".toml")),
                      c);
    CHECK(c.generator.l * c.generator.k == 100);
  }
  cli::RunConfig d;
  cli::apply_config(cli::read_config_file(fs::path(XBSCHED_SOURCE_DIR) / "presets" / "desk.toml"), d);
  CHECK(d.generator.num_employees == 10);
}

TEST_CASE("generate, solve and evaluate compose like the stochastic branch of vss") {
  const fs::path dir = scratch("pipeline");
  cli::RunConfig c = desk(dir);
  std::string text;
  REQUIRE(run(c, "generate", &text) == cli::kOk);
  const Instance in = load_instance(dir / "instance.json");
  CHECK(in.num_employees == 10);
  CHECK(slurp(dir / "instance.json").find("\"config_hash\"") != std::string::npos);

  c.instances = {dir / "instance.json"};
  REQUIRE(run(c, "solve", &text) == cli::kOk);
  CHECK(text.find("solve seed 3") != std::string::npos);
  c.solution = dir / "solution.json";
  REQUIRE(run(c, "evaluate", &text) == cli::kOk);

  cli::RunConfig v = desk(dir);
  REQUIRE(run(v, "vss") == cli::kOk);
  CHECK(slurp(dir / "report.csv") == slurp(dir / "vss_stochastic.csv"));
  const std::string csv = slurp(dir / "report.csv");
  CHECK(csv.rfind("# xbsched seed 3 config ", 0) == 0);
  CHECK(csv.find("\nlabel,cost,cancelled_service_hours,") != std::string::npos);
}

TEST_CASE("exit codes") {
  const fs::path dir = scratch("codes");
  cli::RunConfig c = desk(dir);
  CHECK(run(c, "frobnicate") == cli::kConfigError);
  CHECK(run(c, "evaluate") == cli::kConfigError);  // no --solution

  REQUIRE(run(c, "generate") == cli::kOk);
  auto doc = read_json_file(dir / "instance.json");
  for (auto& o : doc["known_demand"]) o = 10;
  write_json_file(dir / "hard.json", doc);
  c.instances = {dir / "hard.json"};
  std::string text;
  CHECK(run(c, "solve", &text) == cli::kInfeasible);
  CHECK(text.find("day") != std::string::npos);

  // An instance from another generator cannot be scored on reproduced held-out scenarios.
  cli::RunConfig other = desk(dir);
  other.generator.num_employees = 11;
  other.instances = {dir / "instance.json"};
  other.solution = dir / "solution.json";
  CHECK(run(other, "evaluate") == cli::kConfigError);
}

TEST_CASE("oracle-check") {
  const fs::path dir = scratch("oracle");
  cli::RunConfig c;
  c.out = dir;
  c.oracle_trials = 10;
  std::string text;
  CHECK(run(c, "oracle-check", &text) == cli::kOk);
  CHECK(text == "10/10 agreements\n");
  c.oracle_size = "huge";
  CHECK(run(c, "oracle-check") == cli::kConfigError);
}
