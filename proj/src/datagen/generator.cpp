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

#include "xbsched/datagen/generator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "xbsched/core/capacity.hpp"
#include "xbsched/core/error.hpp"
#include "xbsched/core/instance_io.hpp"
#include "xbsched/core/validate.hpp"

namespace xb {

using nlohmann::json;

FirstStageSolution round_robin_assignment(int num_employees) {
  FirstStageSolution fs;
  for (int e = 0; e < num_employees; ++e) fs.pattern_of.push_back(e % kNumPatterns);
  return fs;
}

namespace {

void check_config(const GenConfig& c) {
  if (c.num_employees < 1) throw ConfigError("num_employees must be >= 1");
  if (!c.horizon.valid()) throw ConfigError("num_days must be a positive multiple of 7");
  if (c.l < 1 || c.k < 1) throw ConfigError("l and k must be >= 1");
  if (c.shape_history_weeks != 0 && c.shape_history_weeks < c.k) {
    throw ConfigError("shape_history_weeks must be >= k");
  }
  if (c.shapes.periods_per_day != c.horizon.periods_per_day) {
    throw ConfigError("shape periods differ from the horizon's periods_per_day");
  }
  if (c.costs.c1 <= Rational(0) || c.costs.c3 < Rational(0) || !(c.costs.epsilon > 0 && c.costs.epsilon < 1)) {
    throw ConfigError("cost coefficients out of range");
  }
}

// Largest o such that the witness assignment still covers it.
int max_covered(const DayCapacity& a, const DayCapacity& b) {
  const auto floor_of = [](const DayCapacity& c) {
    return static_cast<int>((c.working * kProbabilityScale - c.absence_micros) / kProbabilityScale);
  };
  return std::max(0, std::min(floor_of(a), floor_of(b)));
}

}  // namespace

HistoricalRates absence_history(const GenConfig& c) {
  Rng hist_rng = substream(c.seed, "absence_history");
  return synthesize_absence_history(c.absence, hist_rng);
}

AbsenceRateGrid absence_grid(const GenConfig& c) {
  return c.whiskers ? grid_from_whiskers(*c.whiskers) : build_absence_grid(absence_history(c));
}

Instance generate_instance(const GenConfig& c) {
  check_config(c);
  Instance in;
  in.horizon = c.horizon;
  in.patterns = build_pattern_catalog(c.horizon);
  in.duties = build_duty_catalog(c.duties);
  in.num_employees = c.num_employees;
  in.costs = c.costs;
  in.seed = c.seed;
  in.provenance = "generator config " + config_hash(gen_config_to_json(c));

  Rng pref_rng = substream(c.seed, "preferences");
  in.preferences = sample_preferences(c.rankings, c.num_employees, pref_rng);

  const HistoricalRates history = absence_history(c);
  const AbsenceRateGrid grid = absence_grid(c);
  in.absence.by_employee_day = assign_absence_probabilities(grid, in.preferences, c.horizon);
  in.absence.by_day = uniform_absence_probabilities(history, c.horizon);

  const int J = c.horizon.num_days;
  in.known_demand.assign(J, 0);
  const FirstStageSolution witness = round_robin_assignment(c.num_employees);
  for (int j = 0; j < J; ++j) {
    const auto pa = day_capacity(in, witness, AbsenceVariant::kPreferenceAware, j);
    const auto pu = day_capacity(in, witness, AbsenceVariant::kUniform, j);
    const int cap = max_covered(pa, pu);
    Rng rng = substream(c.seed, "known_demand", j);
    std::poisson_distribution<int> dist(c.known_demand.mean_by_weekday[static_cast<int>(c.horizon.weekday(j))]);
    int o = dist(rng);
    for (int tries = 0; o > cap && tries < c.known_demand.max_rejections; ++tries) o = dist(rng);
    in.known_demand[j] = std::min(o, cap);
  }

  Rng shape_rng = substream(c.seed, "shape_history");
  const int weeks = c.shape_history_weeks == 0 ? c.k : c.shape_history_weeks;
  const ShapeLibrary lib = synthesize_shape_library(c.shapes, weeks, shape_rng);
  in.scenarios.resize(J);
  for (int j = 0; j < J; ++j) {
    Rng rng = substream(c.seed, "durations", j);
    const Weekday w = c.horizon.weekday(j);
    in.scenarios[j] = assemble_scenarios(j, sample_durations(c.durations, w, c.l, rng), recent_shapes(lib, w, c.k));
  }

  const auto violations = validate_instance(in);
  if (!violations.empty()) throw Error("generated instance is invalid: " + describe(violations));
  return in;
}

std::vector<std::vector<DailyScenario>> generate_heldout_scenarios(const GenConfig& c, int n,
                                                                   std::uint64_t eval_seed) {
  check_config(c);
  if (n < 1) throw ConfigError("number of evaluation scenarios must be >= 1");
  const std::uint64_t root = hash_combine(c.seed, eval_seed);
  std::vector<std::vector<DailyScenario>> out(c.horizon.num_days);
  for (int j = 0; j < c.horizon.num_days; ++j) {
    const Weekday w = c.horizon.weekday(j);
    Rng dur_rng = substream(root, "heldout_durations", j);
    Rng shape_rng = substream(root, "heldout_shapes", j);
    const auto durations = sample_durations(c.durations, w, n, dur_rng);
    out[j].reserve(n);
    for (int s = 0; s < n; ++s) {
      const Shape shape = sample_shape(c.shapes, w, shape_rng);
      std::vector<double> raw(shape.size());
      for (std::size_t t = 0; t < shape.size(); ++t) raw[t] = durations[s] * shape[t];
      out[j].push_back({j, integerize(raw), Rational(1, n)});
    }
  }
  return out;
}

GenConfig desk_scale_config(std::uint64_t seed) {
  GenConfig c;
  c.name = "desk";
  c.seed = seed;
  c.num_employees = 10;
  c.horizon = Horizon{7, kHourlyPeriods};
  c.l = 3;
  c.k = 3;
  c.durations = DurationModel::log_normal_with_medians({18.0, 30.0, 30.0, 30.0, 30.0, 30.0, 18.0}, 0.25);
  c.known_demand.mean_by_weekday = {1.0, 2.0, 2.0, 2.0, 2.0, 2.0, 1.0};
  c.absence.rate_sd = 0.04;
  c.duties.start_periods = {0, 4, 8, 12, 16, 20};
  c.duties.work_hours = {8, 10};
  c.duties.pause_hours = {0, 3};
  return c;
}

Instance generate_tiny_instance(const TinyConfig& c, std::uint64_t seed) {
  if (c.num_employees < 1 || c.periods < 2 || c.num_duties < 1 || c.scenarios_per_day < 1) {
    throw ConfigError("tiny instance dimensions must be positive (periods >= 2)");
  }
  Rng rng = substream(seed, "tiny");
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  Instance in;
  in.horizon = Horizon{7, c.periods};
  in.patterns = build_pattern_catalog(in.horizon);
  in.num_employees = c.num_employees;
  in.seed = seed;
  in.provenance = "tiny";
  for (int w = 0; w < c.num_duties; ++w) {
    Duty d;
    d.id = w;
    d.start_period = uniform(0, c.periods - 1);
    d.work_hours = uniform(8, 10);
    d.pause_hours = uniform(0, 3);
    d.span_hours = d.work_hours + d.pause_hours;
    d.cost = duty_cost(d.work_hours, d.pause_hours);
    d.coverage.assign(c.periods, 0);
    const int len = uniform(1, c.periods - 1);
    for (int t = 0; t < len; ++t) d.coverage[(d.start_period + t) % c.periods] = 1;
    in.duties.push_back(std::move(d));
  }
  for (int e = 0; e < c.num_employees; ++e) {
    Ranking r{1, 2, 3, 4, 5, 6, 7};
    std::shuffle(r.begin(), r.end(), rng);
    in.preferences.scores.push_back(r);
  }
  const std::int64_t levels[] = {0, 50'000, 100'000, 150'000, 250'000, 400'000};
  in.absence.by_employee_day.assign(c.num_employees, std::vector<Probability>(7));
  for (auto& row : in.absence.by_employee_day)
    for (auto& q : row) q = Probability{levels[uniform(0, 5)]};
  in.absence.by_day.resize(7);
  for (auto& q : in.absence.by_day) q = Probability{levels[uniform(0, 5)]};
  in.known_demand.resize(7);
  for (auto& o : in.known_demand) o = uniform(0, c.max_known_demand);
  in.scenarios.resize(7);
  for (int j = 0; j < 7; ++j) {
    for (int s = 0; s < c.scenarios_per_day; ++s) {
      std::vector<int> d(c.periods);
      for (auto& v : d) v = uniform(0, c.max_demand);
      in.scenarios[j].push_back({j, std::move(d), Rational(1, c.scenarios_per_day)});
    }
  }
  return in;
}

namespace {

json rational_field(const Rational& r) { return rational_to_json(r); }

Rational rational_value(const json& j) {
  if (j.is_number_float()) {
    const double v = j.get<double>();
    const auto scaled = std::llround(v * 1e6);
    if (std::abs(v * 1e6 - static_cast<double>(scaled)) > 1e-6) {
      throw ConfigError("cost coefficient must be a multiple of 1e-6");
    }
    return Rational(scaled, 1'000'000);
  }
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  }
  return rational_from_json(j);
}

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be a table/object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!ok.count(it.key())) throw ConfigError("unknown key '" + it.key() + "' in " + where);
  }
}

template <typename T>
void read(const json& obj, const char* key, T& out) {
  if (obj.contains(key)) out = obj.at(key).get<T>();
}

const RankingDistribution& default_rankings() {
  static const RankingDistribution d = RankingDistribution::default_synthetic();
  return d;
}

}  // namespace

json gen_config_to_json(const GenConfig& c) {
  json doc;
  doc["name"] = c.name;
  doc["seed"] = c.seed;
  doc["num_employees"] = c.num_employees;
  doc["num_days"] = c.horizon.num_days;
  doc["periods_per_day"] = c.horizon.periods_per_day;
  doc["l"] = c.l;
  doc["k"] = c.k;

  json params = json::array();
  for (const auto& p : c.durations.params_by_weekday) params.push_back({p.a, p.b});
  doc["durations"] = {{"family", to_string(c.durations.family)}, {"params", params}};

  doc["shapes"] = {{"concentration", c.shapes.concentration},
                   {"morning_peak", c.shapes.morning_peak},
                   {"evening_peak", c.shapes.evening_peak},
                   {"peak_width", c.shapes.peak_width},
                   {"base_level", c.shapes.base_level},
                   {"weekend_peak_scale", c.shapes.weekend_peak_scale},
                   {"history_weeks", c.shape_history_weeks}};

  if (c.rankings.entries.size() == default_rankings().entries.size() &&
      c.rankings.entries == default_rankings().entries) {
    doc["rankings"] = "default";
  } else {
    json list = json::array();
    for (const auto& [r, w] : c.rankings.entries) list.push_back({{"ranking", r}, {"weight", w}});
    doc["rankings"] = list;
  }

  json absence = {{"mean_rate", c.absence.mean_rate},
                  {"rate_sd", c.absence.rate_sd},
                  {"samples_per_weekday", c.absence.samples_per_weekday}};
  if (c.whiskers) {
    json w = json::array();
    for (const auto& x : *c.whiskers) w.push_back({x.low, x.high});
    absence["whiskers"] = w;
  }
  doc["absence"] = absence;
  doc["known_demand"] = {{"mean_by_weekday", c.known_demand.mean_by_weekday},
                         {"max_rejections", c.known_demand.max_rejections}};
  doc["duties"] = {{"start_periods", c.duties.start_periods},
                   {"work_hours", c.duties.work_hours},
                   {"pause_hours", c.duties.pause_hours},
                   {"max_span_hours", c.duties.max_span_hours}};
  doc["costs"] = {{"c1", rational_field(c.costs.c1)},
                  {"c3", rational_field(c.costs.c3)},
                  {"epsilon", c.costs.epsilon}};
  return doc;
}

GenConfig gen_config_from_json(const json& doc) {
  try {
    reject_unknown(doc, {"name", "seed", "num_employees", "num_days", "periods_per_day", "l", "k", "durations",
                         "shapes", "rankings", "absence", "known_demand", "duties", "costs"},
                   "generator config");
    GenConfig c;
    read(doc, "name", c.name);
    read(doc, "seed", c.seed);
    read(doc, "num_employees", c.num_employees);
    read(doc, "num_days", c.horizon.num_days);
    read(doc, "periods_per_day", c.horizon.periods_per_day);
    c.shapes.periods_per_day = c.horizon.periods_per_day;
    c.duties.periods_per_day = c.horizon.periods_per_day;
    read(doc, "l", c.l);
    read(doc, "k", c.k);

    if (doc.contains("durations")) {
      const auto& d = doc.at("durations");
      reject_unknown(d, {"family", "params", "medians", "log_sd", "hours"}, "durations");
      const auto family = duration_family_from_string(d.value("family", std::string("lognormal")));
      if (d.contains("medians")) {
        if (family != DurationFamily::kLogNormal) throw ConfigError("medians apply to the lognormal family only");
        c.durations = DurationModel::log_normal_with_medians(d.at("medians").get<std::array<double, 7>>(),
                                                             d.value("log_sd", 0.12));
      } else if (d.contains("hours")) {
        if (family != DurationFamily::kPointMass) throw ConfigError("hours applies to the point_mass family only");
        c.durations = DurationModel::point_mass(d.at("hours").get<double>());
      } else if (d.contains("params")) {
        c.durations.family = family;
        const auto p = d.at("params").get<std::vector<std::array<double, 2>>>();
        if (p.size() != kDaysPerWeek) throw ConfigError("durations.params needs 7 [a, b] pairs");
        for (int i = 0; i < kDaysPerWeek; ++i) c.durations.params_by_weekday[i] = {p[i][0], p[i][1]};
      } else {
        throw ConfigError("durations needs params, medians or hours");
      }
    }
    if (doc.contains("shapes")) {
      const auto& s = doc.at("shapes");
      reject_unknown(s, {"concentration", "morning_peak", "evening_peak", "peak_width", "base_level",
                         "weekend_peak_scale", "history_weeks"},
                     "shapes");
      read(s, "concentration", c.shapes.concentration);
      read(s, "morning_peak", c.shapes.morning_peak);
      read(s, "evening_peak", c.shapes.evening_peak);
      read(s, "peak_width", c.shapes.peak_width);
      read(s, "base_level", c.shapes.base_level);
      read(s, "weekend_peak_scale", c.shapes.weekend_peak_scale);
      read(s, "history_weeks", c.shape_history_weeks);
    }
    if (doc.contains("rankings")) {
      const auto& r = doc.at("rankings");
      if (r.is_string()) {
        if (r.get<std::string>() != "default") throw ConfigError("rankings must be \"default\" or a list");
        c.rankings = default_rankings();
      } else {
        c.rankings.entries.clear();
        for (const auto& e : r) {
          reject_unknown(e, {"ranking", "weight"}, "rankings entry");
          c.rankings.entries.push_back({e.at("ranking").get<Ranking>(), e.value("weight", 1.0)});
        }
      }
    }
    if (doc.contains("absence")) {
      const auto& a = doc.at("absence");
      reject_unknown(a, {"mean_rate", "rate_sd", "samples_per_weekday", "whiskers"}, "absence");
      read(a, "mean_rate", c.absence.mean_rate);
      read(a, "rate_sd", c.absence.rate_sd);
      read(a, "samples_per_weekday", c.absence.samples_per_weekday);
      if (a.contains("whiskers")) {
        const auto w = a.at("whiskers").get<std::vector<std::array<double, 2>>>();
        if (w.size() != kDaysPerWeek) throw ConfigError("absence.whiskers needs 7 [low, high] pairs");
        std::array<Whiskers, kDaysPerWeek> ws{};
        for (int i = 0; i < kDaysPerWeek; ++i) ws[i] = {w[i][0], w[i][1]};
        c.whiskers = ws;
      }
    }
    if (doc.contains("known_demand")) {
      const auto& k = doc.at("known_demand");
      reject_unknown(k, {"mean_by_weekday", "max_rejections"}, "known_demand");
      read(k, "mean_by_weekday", c.known_demand.mean_by_weekday);
      read(k, "max_rejections", c.known_demand.max_rejections);
    }
    if (doc.contains("duties")) {
      const auto& d = doc.at("duties");
      reject_unknown(d, {"start_periods", "work_hours", "pause_hours", "max_span_hours"}, "duties");
      read(d, "start_periods", c.duties.start_periods);
      read(d, "work_hours", c.duties.work_hours);
      read(d, "pause_hours", c.duties.pause_hours);
      read(d, "max_span_hours", c.duties.max_span_hours);
    }
    if (doc.contains("costs")) {
      const auto& k = doc.at("costs");
      reject_unknown(k, {"c1", "c3", "epsilon"}, "costs");
      if (k.contains("c1")) c.costs.c1 = rational_value(k.at("c1"));
      if (k.contains("c3")) c.costs.c3 = rational_value(k.at("c3"));
      read(k, "epsilon", c.costs.epsilon);
    }
    return c;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("generator config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("generator config: ") + e.what());
  }
}

std::string config_hash(const json& doc) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash_string(doc.dump())));
  return buf;
}

std::string scenarios_to_csv(const std::vector<std::vector<DailyScenario>>& scenarios) {
  std::ostringstream os;
  os << "day,scenario,period,demand\n";
  for (std::size_t j = 0; j < scenarios.size(); ++j)
    for (std::size_t s = 0; s < scenarios[j].size(); ++s)
      for (std::size_t t = 0; t < scenarios[j][s].demand.size(); ++t)
        os << j << ',' << s << ',' << t << ',' << scenarios[j][s].demand[t] << '\n';
  return os.str();
}

}  // namespace xb
