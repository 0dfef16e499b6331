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

#include "xbsched/cli/run.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "toml.hpp"
#include "xbsched/core/error.hpp"
#include "xbsched/core/instance_io.hpp"
#include "xbsched/recourse/recourse.hpp"

namespace xb::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json toml_to_json(const toml::node& node) {
  if (const auto* t = node.as_table()) {
    json obj = json::object();
    for (auto&& [key, value] : *t) obj[std::string(key.str())] = toml_to_json(value);
    return obj;
  }
  if (const auto* a = node.as_array()) {
    json arr = json::array();
    for (auto&& value : *a) arr.push_back(toml_to_json(value));
    return arr;
  }
  if (const auto* v = node.as_string()) return v->get();
  if (const auto* v = node.as_integer()) return v->get();
  if (const auto* v = node.as_floating_point()) return v->get();
  if (const auto* v = node.as_boolean()) return v->get();
  throw ConfigError("dates and times are not valid config values");
}

void reject_unknown(const json& obj, std::initializer_list<const char*> keys, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be a table");
  for (const auto& [k, v] : obj.items()) {
    bool known = false;
    for (const char* key : keys) known = known || k == key;
    if (!known) throw ConfigError("unknown key '" + k + "' in " + where);
  }
}

template <class T>
void read(const json& obj, const char* key, T& dst, const std::string& where) {
  if (!obj.contains(key)) return;
  try {
    dst = obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + "." + key + " has the wrong type");
  }
}

PreferenceMode preference_from_string(const std::string& s) {
  if (s == "with") return PreferenceMode::kWith;
  if (s == "without") return PreferenceMode::kWithout;
  throw ConfigError("formulation.preference must be \"with\" or \"without\"");
}

ScenarioMode scenario_mode_from_string(const std::string& s) {
  if (s == "full") return ScenarioMode::kFull;
  if (s == "expected-value") return ScenarioMode::kExpectedValue;
  if (s == "single") return ScenarioMode::kSingle;
  throw ConfigError("formulation.scenarios must be full, expected-value or single");
}

json deltas_json(const Deltas& d) {
  auto cell = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  return {{"cost", cell(d.cost)}, {"cancelled_service", cell(d.cancelled_service)},
          {"social_welfare", cell(d.social_welfare)}};
}

json stats_json(const SolverStats& s, bool timing) {
  json j = {{"status", s.status}, {"gap", s.gap}, {"bound", s.bound}, {"nodes", s.nodes},
            {"solves", s.solves}, {"solved", s.solved}};
  if (timing) j["seconds"] = s.seconds;
  return j;
}

SolverStats stats_from_json(const json& j) {
  SolverStats s;
  s.status = j.value("status", std::string("none"));
  s.gap = j.value("gap", 0.0);
  s.bound = j.value("bound", 0.0);
  s.nodes = j.value("nodes", 0L);
  s.solves = j.value("solves", 0);
  s.solved = j.value("solved", 0);
  s.seconds = j.value("seconds", 0.0);
  return s;
}

struct Subject {
  Instance instance;
  GenConfig generator;  // the generator section with the instance's seed
};

class Runner {
 public:
  Runner(const RunConfig& c, std::ostream& out) : c_(c), out_(out), hash_(run_config_hash(c)) {}

  void dispatch() {
    const std::string& cmd = c_.command;
    if (cmd == "generate") generate();
    else if (cmd == "solve") solve();
    else if (cmd == "evaluate") evaluate();
    else if (cmd == "vss") vss();
    else if (cmd == "evpi") evpi();
    else if (cmd == "scenario-study") study();
    else if (cmd == "oracle-check") oracle();
    else throw ConfigError("unknown command '" + cmd + "'");
  }

  int status() const { return status_; }

 private:
  json provenance() const {
    return {{"tool", "xbsched"}, {"schema_version", kSchemaVersion}, {"command", c_.command},
            {"seed", c_.generator.seed}, {"config_hash", hash_}};
  }

  // Leading comment of every text artifact.
  std::string banner() const {
    return "# xbsched seed " + std::to_string(c_.generator.seed) + " config " + hash_ + "\n";
  }

  void write_text(const std::string& name, const std::string& text) const {
    fs::create_directories(c_.out);
    std::ofstream f(c_.out / name, std::ios::binary);
    if (!f) throw Error("cannot write " + (c_.out / name).string());
    f << text;
  }

  void write_json(const std::string& name, json doc) const {
    doc["run"] = provenance();
    write_json_file(c_.out / name, doc);
  }

  std::string suffixed(const std::string& stem, const std::string& ext, const Subject& s, std::size_t n) const {
    return n == 1 ? stem + ext : stem + "_" + std::to_string(s.instance.seed) + ext;
  }

  std::vector<Subject> subjects(bool need_generator) const {
    std::vector<Subject> out;
    if (c_.instances.empty()) {
      if (c_.count < 1) throw ConfigError("--count must be >= 1");
      for (int i = 0; i < c_.count; ++i) {
        Subject s;
        s.generator = c_.generator;
        s.generator.seed = c_.generator.seed + static_cast<std::uint64_t>(i);
        s.instance = generate_instance(s.generator);
        out.push_back(std::move(s));
      }
      return out;
    }
    for (const auto& path : c_.instances) {
      if (!fs::exists(path)) throw ConfigError("instance file not found: " + path.string());
      Subject s;
      s.instance = load_instance(path);
      s.generator = c_.generator;
      s.generator.seed = s.instance.seed;
      const std::string expected = "generator config " + config_hash(gen_config_to_json(s.generator));
      if (need_generator && s.instance.provenance != expected) {
        throw ConfigError(path.string() + " was not generated by the generator section of this config with seed " +
                          std::to_string(s.instance.seed) + "; held-out scenarios cannot be reproduced");
      }
      out.push_back(std::move(s));
    }
    return out;
  }

  ScenarioSet heldout(const Subject& s) const {
    return generate_heldout_scenarios(s.generator, c_.evaluation.num_eval_scenarios, c_.evaluation.eval_seed);
  }

  void generate() {
    const auto subs = subjects(false);
    for (const auto& s : subs) {
      json doc = instance_to_json(s.instance);
      write_json(suffixed("instance", ".json", s, subs.size()), doc);
      std::size_t per_day = s.instance.scenarios.empty() ? 0 : s.instance.scenarios[0].size();
      out_ << "instance seed " << s.instance.seed << ": " << s.instance.num_employees << " employees, "
           << s.instance.num_days() << " days, " << per_day << " scenarios per day, " << s.instance.num_duties()
           << " duties\n";
    }
  }

  void solve() {
    const auto subs = subjects(false);
    for (const auto& s : subs) {
      std::ostringstream log;
      milp::SolveParams p = c_.solve;
      p.log = &log;
      p.log_time = c_.timing;
      StochasticSolveResult r;
      try {
        r = solve_extensive_form(s.instance, c_.formulation, p);
      } catch (...) {
        write_text(suffixed("solver", ".log", s, subs.size()), banner() + log.str());
        throw;
      }
      write_text(suffixed("solver", ".log", s, subs.size()), banner() + log.str());
      if (!r.milp.has_incumbent()) {
        throw SolverLimit(std::string("no feasible first stage found (status ") + milp::to_string(r.milp.status) +
                          ")");
      }
      json doc = first_stage_to_json(r.first_stage);
      doc["instance"] = s.instance.provenance;
      doc["instance_seed"] = s.instance.seed;
      doc["formulation"] = {{"preference", to_string(c_.formulation.preference)},
                            {"scenarios", to_string(c_.formulation.scenarios)},
                            {"single_scenario", c_.formulation.single_scenario}};
      doc["objective"] = r.objective;
      doc["identity_holds"] = r.identity_holds;
      doc["model"] = {{"columns", r.size.columns}, {"rows", r.size.rows}};
      doc["solver"] = stats_json(solver_stats(r, c_.solve), c_.timing);
      write_json(suffixed("solution", ".json", s, subs.size()), doc);
      out_ << "solve seed " << s.instance.seed << ": " << milp::to_string(r.milp.status) << " objective "
           << format_number(r.objective) << " gap " << format_number(r.milp.gap, 6) << " nodes " << r.milp.nodes
           << "\n";
      if (!r.identity_holds) status_ = kFailure;
    }
  }

  void evaluate() {
    if (c_.solution.empty()) throw ConfigError("evaluate needs --solution");
    if (!fs::exists(c_.solution)) throw ConfigError("solution file not found: " + c_.solution.string());
    const auto subs = subjects(true);
    if (subs.size() != 1) throw ConfigError("evaluate takes exactly one instance");
    const Subject& s = subs[0];
    const json sol = read_json_file(c_.solution);
    if (sol.value("instance", std::string()) != s.instance.provenance ||
        sol.value("instance_seed", std::uint64_t{0}) != s.instance.seed) {
      throw ConfigError(c_.solution.string() + " does not belong to this instance");
    }
    const FirstStageSolution first = first_stage_from_json(sol);
    const PreferenceMode trained =
        preference_from_string(sol.at("formulation").value("preference", std::string("with")));
    EvaluationReport r = evaluate_first_stage(s.instance, first, heldout(s),
                                              evaluation_mode(trained, c_.evaluation), c_.evaluation.workers);
    r.label = s.instance.provenance;
    if (sol.contains("solver")) r.solver = stats_from_json(sol.at("solver"));
    write_text("report.csv", banner() + reports_to_csv({r}, c_.timing));
    write_json("report.json", json::parse(report_to_json(r, c_.timing)));
    write_text("report.md", banner() + metrics_markdown({r}, c_.timing));
    out_ << "evaluate seed " << s.instance.seed << ": cost " << format_number(r.cost.to_double())
         << " C.S. " << format_number(r.cancelled_service_hours.to_double()) << " S.W. "
         << format_number(r.social_welfare.to_double()) << "\n";
  }

  void vss() {
    const auto subs = subjects(true);
    std::vector<EvaluationReport> sto, det;
    std::vector<Deltas> rows;
    std::vector<std::string> labels;
    json per = json::array();
    for (const auto& s : subs) {
      const VssResult r = compute_vss(s.instance, heldout(s), c_.solve, c_.formulation.preference, c_.evaluation);
      sto.push_back(r.stochastic);
      det.push_back(r.deterministic);
      rows.push_back(r.deltas);
      labels.push_back(r.stochastic.label);
      per.push_back({{"label", r.stochastic.label}, {"vss", r.vss.to_double()},
                     {"gap_allowance", r.gap_allowance}, {"deltas", deltas_json(r.deltas)}});
      out_ << "vss seed " << s.instance.seed << ": " << format_number(r.vss.to_double()) << " (gap allowance "
           << format_number(r.gap_allowance) << ")\n";
    }
    const Deltas mean = percentage_deltas(det, sto);
    write_text("vss_stochastic.csv", banner() + reports_to_csv(sto, c_.timing));
    write_text("vss_deterministic.csv", banner() + reports_to_csv(det, c_.timing));
    write_text("vss.md", banner() + "\nStochastic\n\n" + metrics_markdown(sto, c_.timing) + "\nDeterministic\n\n" +
                             metrics_markdown(det, c_.timing) + "\nImprovement of stochastic over deterministic\n\n" +
                             deltas_markdown(labels, rows, mean));
    write_json("vss.json", {{"instances", per}, {"mean_deltas", deltas_json(mean)}});
  }

  void evpi() {
    const auto subs = subjects(true);
    std::vector<EvaluationReport> sto, ws;
    std::vector<Deltas> rows;
    std::vector<std::string> labels;
    json per = json::array();
    for (const auto& s : subs) {
      const ScenarioSet eval = heldout(s);
      const EvpiResult r = compute_evpi(s.instance, eval, c_.solve, c_.formulation.preference, c_.evaluation);
      sto.push_back(r.stochastic);
      ws.push_back(r.wait_and_see);
      rows.push_back(r.deltas);
      labels.push_back(r.stochastic.label);
      const double flip_rate = 100.0 * r.sign_flips / static_cast<double>(eval[0].size());
      per.push_back({{"label", r.stochastic.label}, {"evpi", r.evpi.to_double()},
                     {"gap_allowance", r.gap_allowance}, {"sign_flips", r.sign_flips},
                     {"sign_flip_percent", flip_rate}, {"deltas", deltas_json(r.deltas)}});
      out_ << "evpi seed " << s.instance.seed << ": " << format_number(r.evpi.to_double()) << " sign flips "
           << r.sign_flips << " (" << format_number(flip_rate, 2) << "%)\n";
    }
    const Deltas mean = percentage_deltas(sto, ws);
    write_text("evpi_stochastic.csv", banner() + reports_to_csv(sto, c_.timing));
    write_text("evpi_wait_and_see.csv", banner() + reports_to_csv(ws, c_.timing));
    write_text("evpi.md", banner() + "\nStochastic\n\n" + metrics_markdown(sto, c_.timing) + "\nWait-and-see\n\n" +
                              metrics_markdown(ws, c_.timing) + "\nImprovement of wait-and-see over stochastic\n\n" +
                              deltas_markdown(labels, rows, mean));
    write_json("evpi.json", {{"instances", per}, {"mean_deltas", deltas_json(mean)}});
  }

  void study() {
    if (!c_.instances.empty()) throw ConfigError("scenario-study generates its own instance family");
    if (c_.study_counts.empty()) throw ConfigError("study.counts is empty");
    const auto subs = subjects(true);
    std::vector<std::vector<EvaluationReport>> by_count(c_.study_counts.size());
    std::vector<EvaluationReport> all;
    for (const auto& s : subs) {
      std::vector<Instance> family;
      for (int n : c_.study_counts) {
        if (n < 1) throw ConfigError("study.counts entries must be >= 1");
        // l * k = n with l the largest divisor not above sqrt(n).
        int l = static_cast<int>(std::sqrt(static_cast<double>(n)));
        while (n % l != 0) --l;
        GenConfig g = s.generator;
        g.l = l;
        g.k = n / l;
        family.push_back(generate_instance(g));
      }
      const auto rows = scenario_count_study(family, heldout(s), c_.solve, c_.formulation.preference,
                                             c_.evaluation);
      for (std::size_t i = 0; i < rows.size(); ++i) {
        EvaluationReport r = rows[i].report;
        r.label = "seed " + std::to_string(s.instance.seed) + " " + r.label;
        by_count[i].push_back(r);
        all.push_back(r);
        out_ << r.label << ": cost " << format_number(r.cost.to_double()) << "\n";
      }
    }
    std::vector<std::string> labels;
    std::vector<Deltas> deltas;
    json steps = json::array();
    for (std::size_t i = 1; i < by_count.size(); ++i) {
      labels.push_back(std::to_string(c_.study_counts[i - 1]) + " to " + std::to_string(c_.study_counts[i]));
      deltas.push_back(percentage_deltas(by_count[i - 1], by_count[i]));
      steps.push_back({{"from", c_.study_counts[i - 1]}, {"to", c_.study_counts[i]},
                       {"deltas", deltas_json(deltas.back())}});
    }
    write_text("study.csv", banner() + reports_to_csv(all, c_.timing));
    std::string md = banner() + "\n" + metrics_markdown(all, c_.timing);
    if (!deltas.empty()) {
      md += "\nImprovement between consecutive counts\n\n" + deltas_markdown(labels, deltas, deltas.back());
    }
    write_text("study.md", md);
    write_json("study.json", {{"counts", c_.study_counts}, {"steps", steps}});
  }

  void oracle() {
    TinyConfig tc;
    if (c_.oracle_size == "tiny") tc = TinyConfig{3, 6, 4, 2, 3, 1};
    else if (c_.oracle_size == "small") tc = TinyConfig{4, 6, 5, 2, 3, 1};
    else throw ConfigError("oracle.size must be tiny or small");
    if (c_.oracle_trials < 1) throw ConfigError("oracle.trials must be >= 1");
    milp::SolveParams p = c_.solve;
    p.relative_gap = 0.0;
    p.absolute_gap = 1e-7;
    p.time_limit_seconds = std::numeric_limits<double>::infinity();
    int agree = 0;
    std::string csv = banner() + "seed,feasible,enumeration,solver,agree\n";
    for (int t = 0; t < c_.oracle_trials; ++t) {
      const std::uint64_t seed = c_.generator.seed + static_cast<std::uint64_t>(t);
      const Instance in = generate_tiny_instance(tc, seed);
      const auto en = enumerate_first_stage(in, c_.formulation.preference, false);
      FormulationConfig fc;
      fc.preference = c_.formulation.preference;
      bool ok = false;
      std::string solver_cell = "infeasible";
      try {
        const auto r = solve_extensive_form(in, fc, p);
        if (r.milp.has_incumbent()) {
          solver_cell = format_number(r.objective, 6);
          const double want = en.best_objective.to_double();
          ok = en.feasible && r.identity_holds && std::abs(r.objective - want) <= 1e-6 * (1 + std::abs(want));
        } else {
          ok = !en.feasible && r.milp.status == milp::MilpStatus::kInfeasible;
        }
      } catch (const InfeasibleInstance&) {
        ok = !en.feasible;
      }
      agree += ok ? 1 : 0;
      csv += std::to_string(seed) + "," + (en.feasible ? "1" : "0") + "," +
             (en.feasible ? format_number(en.best_objective.to_double(), 6) : "infeasible") + "," + solver_cell +
             "," + (ok ? "1" : "0") + "\n";
    }
    write_text("oracle.csv", csv);
    out_ << agree << "/" << c_.oracle_trials << " agreements\n";
    if (agree != c_.oracle_trials) status_ = kFailure;
  }

  const RunConfig& c_;
  std::ostream& out_;
  std::string hash_;
  int status_ = kOk;
};

}  // namespace

const char* commands_help() {
  return "generate, solve, evaluate, vss, evpi, scenario-study, oracle-check";
}

json read_config_file(const fs::path& path) {
  if (!fs::exists(path)) throw ConfigError("config file not found: " + path.string());
  std::ifstream f(path, std::ios::binary);
  std::stringstream buf;
  buf << f.rdbuf();
  const std::string text = buf.str();
  auto as_json = [&]() {
    try {
      return json::parse(text);
    } catch (const json::exception& e) {
      throw ConfigError(path.string() + ": " + e.what());
    }
  };
  if (path.extension() == ".json") return as_json();
  try {
    return toml_to_json(toml::parse(text, path.string()));
  } catch (const toml::parse_error& e) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return as_json();
    std::ostringstream msg;
    msg << path.string() << ":" << e.source().begin.line << ": " << e.description();
    throw ConfigError(msg.str());
  }
}

void apply_config(const json& doc, RunConfig& c) {
  reject_unknown(doc, {"generator", "formulation", "solve", "evaluation", "study", "oracle", "count"}, "config");
  read(doc, "count", c.count, "config");
  if (doc.contains("generator")) c.generator = gen_config_from_json(doc.at("generator"));
  if (doc.contains("formulation")) {
    const auto& f = doc.at("formulation");
    reject_unknown(f, {"preference", "scenarios", "single_scenario"}, "formulation");
    std::string pref = to_string(c.formulation.preference), sc = to_string(c.formulation.scenarios);
    read(f, "preference", pref, "formulation");
    read(f, "scenarios", sc, "formulation");
    c.formulation.preference = preference_from_string(pref);
    c.formulation.scenarios = scenario_mode_from_string(sc);
    read(f, "single_scenario", c.formulation.single_scenario, "formulation");
  }
  if (doc.contains("solve")) {
    const auto& s = doc.at("solve");
    reject_unknown(s, {"relative_gap", "absolute_gap", "time_limit_seconds", "node_limit", "branching_seed"},
                   "solve");
    read(s, "relative_gap", c.solve.relative_gap, "solve");
    read(s, "absolute_gap", c.solve.absolute_gap, "solve");
    if (s.contains("time_limit_seconds") && !s.at("time_limit_seconds").is_null()) {
      read(s, "time_limit_seconds", c.solve.time_limit_seconds, "solve");
    }
    read(s, "node_limit", c.solve.node_limit, "solve");
    read(s, "branching_seed", c.solve.branching_seed, "solve");
    if (c.solve.relative_gap < 0 || c.solve.absolute_gap < 0) throw ConfigError("solve gaps must be >= 0");
    if (!(c.solve.time_limit_seconds > 0)) throw ConfigError("solve.time_limit_seconds must be > 0");
  }
  if (doc.contains("evaluation")) {
    const auto& e = doc.at("evaluation");
    reject_unknown(e, {"num_eval_scenarios", "eval_seed", "cross_eval", "workers"}, "evaluation");
    read(e, "num_eval_scenarios", c.evaluation.num_eval_scenarios, "evaluation");
    read(e, "eval_seed", c.evaluation.eval_seed, "evaluation");
    read(e, "cross_eval", c.evaluation.cross_eval, "evaluation");
    read(e, "workers", c.evaluation.workers, "evaluation");
    if (c.evaluation.num_eval_scenarios < 1) throw ConfigError("evaluation.num_eval_scenarios must be >= 1");
    if (c.evaluation.workers < 1) throw ConfigError("evaluation.workers must be >= 1");
  }
  if (doc.contains("study")) {
    reject_unknown(doc.at("study"), {"counts"}, "study");
    read(doc.at("study"), "counts", c.study_counts, "study");
  }
  if (doc.contains("oracle")) {
    reject_unknown(doc.at("oracle"), {"size", "trials"}, "oracle");
    read(doc.at("oracle"), "size", c.oracle_size, "oracle");
    read(doc.at("oracle"), "trials", c.oracle_trials, "oracle");
  }
}

json effective_config(const RunConfig& c) {
  json solve = {{"relative_gap", c.solve.relative_gap},
                {"absolute_gap", c.solve.absolute_gap},
                {"node_limit", c.solve.node_limit},
                {"branching_seed", c.solve.branching_seed}};
  solve["time_limit_seconds"] =
      std::isfinite(c.solve.time_limit_seconds) ? json(c.solve.time_limit_seconds) : json(nullptr);
  return {{"count", c.count},
          {"generator", gen_config_to_json(c.generator)},
          {"formulation",
           {{"preference", to_string(c.formulation.preference)},
            {"scenarios", to_string(c.formulation.scenarios)},
            {"single_scenario", c.formulation.single_scenario}}},
          {"solve", solve},
          {"evaluation",
           {{"num_eval_scenarios", c.evaluation.num_eval_scenarios},
            {"eval_seed", c.evaluation.eval_seed},
            {"cross_eval", c.evaluation.cross_eval}}},
          {"study", {{"counts", c.study_counts}}},
          {"oracle", {{"size", c.oracle_size}, {"trials", c.oracle_trials}}}};
}

std::string run_config_hash(const RunConfig& c) { return config_hash(effective_config(c)); }

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    Runner r(config, out);
    r.dispatch();
    return r.status();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const InfeasibleInstance& e) {
    err << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const SolverLimit& e) {
    err << "solver limit: " << e.what() << "\n";
    return kSolverLimit;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace xb::cli
