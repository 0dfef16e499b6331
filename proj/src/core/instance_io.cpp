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

#include "xbsched/core/instance_io.hpp"

#include <fstream>
#include <sstream>

#include "xbsched/core/error.hpp"

namespace xb {

using nlohmann::json;

json rational_to_json(const Rational& r) { return json{{"num", r.num()}, {"den", r.den()}}; }

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  return Rational(j.at("num").get<std::int64_t>(), j.at("den").get<std::int64_t>());
}

namespace {

void check_schema(const json& doc, const char* kind) {
  if (!doc.is_object() || !doc.contains("schema_version")) {
    throw Error(std::string(kind) + " document lacks schema_version");
  }
  const int v = doc.at("schema_version").get<int>();
  if (v != kSchemaVersion) {
    throw Error(std::string(kind) + " schema_version " + std::to_string(v) + " is not supported");
  }
  if (doc.value("kind", std::string(kind)) != kind) {
    throw Error("expected a " + std::string(kind) + " document, got " + doc.at("kind").get<std::string>());
  }
}

}  // namespace

json instance_to_json(const Instance& in) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["kind"] = "instance";
  doc["seed"] = in.seed;
  doc["provenance"] = in.provenance;
  doc["horizon"] = {{"num_days", in.horizon.num_days}, {"periods_per_day", in.horizon.periods_per_day}};
  doc["num_employees"] = in.num_employees;

  json patterns = json::array();
  for (const auto& p : in.patterns) {
    patterns.push_back({{"id", p.id},
                        {"label", p.label()},
                        {"off_days", {static_cast<int>(p.off_days[0]), static_cast<int>(p.off_days[1])}},
                        {"r", p.work},
                        {"b", p.off}});
  }
  doc["patterns"] = std::move(patterns);

  json duties = json::array();
  for (const auto& d : in.duties) {
    duties.push_back({{"id", d.id},
                      {"start_period", d.start_period},
                      {"work_hours", d.work_hours},
                      {"pause_hours", d.pause_hours},
                      {"span_hours", d.span_hours},
                      {"coverage", d.coverage},
                      {"cost", rational_to_json(d.cost)}});
  }
  doc["duties"] = std::move(duties);
  doc["known_demand"] = in.known_demand;

  json scenarios = json::array();
  for (const auto& day : in.scenarios) {
    json list = json::array();
    for (const auto& s : day) {
      list.push_back({{"day", s.day}, {"demand", s.demand}, {"probability", rational_to_json(s.probability)}});
    }
    scenarios.push_back(std::move(list));
  }
  doc["scenarios"] = std::move(scenarios);
  doc["preferences"] = in.preferences.scores;

  json q_pref = json::array();
  for (const auto& row : in.absence.by_employee_day) {
    json r = json::array();
    for (auto q : row) r.push_back(q.micros);
    q_pref.push_back(std::move(r));
  }
  json q_uniform = json::array();
  for (auto q : in.absence.by_day) q_uniform.push_back(q.micros);
  doc["absence"] = {{"scale", kProbabilityScale}, {"q_pref", std::move(q_pref)}, {"q_uniform", std::move(q_uniform)}};
  doc["costs"] = {{"c1", rational_to_json(in.costs.c1)},
                  {"c3", rational_to_json(in.costs.c3)},
                  {"epsilon", in.costs.epsilon}};
  return doc;
}

Instance instance_from_json(const json& doc) {
  check_schema(doc, "instance");
  try {
    Instance in;
    in.seed = doc.value("seed", std::uint64_t{0});
    in.provenance = doc.value("provenance", std::string());
    in.horizon.num_days = doc.at("horizon").at("num_days").get<int>();
    in.horizon.periods_per_day = doc.at("horizon").at("periods_per_day").get<int>();
    in.num_employees = doc.at("num_employees").get<int>();

    for (const auto& p : doc.at("patterns")) {
      DaysOffPattern pat;
      pat.id = p.at("id").get<int>();
      pat.off_days = {static_cast<Weekday>(p.at("off_days").at(0).get<int>()),
                      static_cast<Weekday>(p.at("off_days").at(1).get<int>())};
      pat.work = p.at("r").get<std::vector<std::uint8_t>>();
      pat.off = p.at("b").get<std::vector<std::uint8_t>>();
      in.patterns.push_back(std::move(pat));
    }
    for (const auto& d : doc.at("duties")) {
      Duty duty;
      duty.id = d.at("id").get<int>();
      duty.start_period = d.at("start_period").get<int>();
      duty.work_hours = d.at("work_hours").get<int>();
      duty.pause_hours = d.at("pause_hours").get<int>();
      duty.span_hours = d.at("span_hours").get<int>();
      duty.coverage = d.at("coverage").get<std::vector<std::uint8_t>>();
      duty.cost = rational_from_json(d.at("cost"));
      in.duties.push_back(std::move(duty));
    }
    in.known_demand = doc.at("known_demand").get<std::vector<int>>();
    for (const auto& day : doc.at("scenarios")) {
      std::vector<DailyScenario> list;
      for (const auto& s : day) {
        list.push_back({s.at("day").get<int>(), s.at("demand").get<std::vector<int>>(),
                        rational_from_json(s.at("probability"))});
      }
      in.scenarios.push_back(std::move(list));
    }
    in.preferences.scores = doc.at("preferences").get<std::vector<std::array<int, kNumPatterns>>>();

    const auto& abs = doc.at("absence");
    if (abs.at("scale").get<std::int64_t>() != kProbabilityScale) {
      throw Error("absence probability scale must be " + std::to_string(kProbabilityScale));
    }
    for (const auto& row : abs.at("q_pref")) {
      std::vector<Probability> r;
      for (const auto& q : row) r.push_back(Probability{q.get<std::int64_t>()});
      in.absence.by_employee_day.push_back(std::move(r));
    }
    for (const auto& q : abs.at("q_uniform")) in.absence.by_day.push_back(Probability{q.get<std::int64_t>()});

    const auto& c = doc.at("costs");
    in.costs.c1 = rational_from_json(c.at("c1"));
    in.costs.c3 = rational_from_json(c.at("c3"));
    in.costs.epsilon = c.at("epsilon").get<double>();
    return in;
  } catch (const json::exception& e) {
    throw Error(std::string("malformed instance document: ") + e.what());
  }
}

json first_stage_to_json(const FirstStageSolution& fs) {
  return json{{"schema_version", kSchemaVersion}, {"kind", "first_stage"}, {"assignment", fs.pattern_of}};
}

FirstStageSolution first_stage_from_json(const json& doc) {
  check_schema(doc, "first_stage");
  try {
    return FirstStageSolution{doc.at("assignment").get<std::vector<int>>()};
  } catch (const json::exception& e) {
    throw Error(std::string("malformed first-stage document: ") + e.what());
  }
}

std::string dump_canonical(const json& doc) { return doc.dump(1) + "\n"; }

void write_json_file(const std::filesystem::path& path, const json& doc) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << dump_canonical(doc);
  if (!out) throw Error("write failed for " + path.string());
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

void save_instance(const std::filesystem::path& path, const Instance& instance) {
  write_json_file(path, instance_to_json(instance));
}

Instance load_instance(const std::filesystem::path& path) { return instance_from_json(read_json_file(path)); }

}  // namespace xb
