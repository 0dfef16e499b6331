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

#include "xbsched/core/validate.hpp"

#include <algorithm>
#include <sstream>

#include "xbsched/core/catalog.hpp"

namespace xb {

namespace {

std::string indexed(const std::string& name, int i) { return name + "[" + std::to_string(i) + "]"; }

bool is_binary(const std::vector<std::uint8_t>& v) {
  return std::all_of(v.begin(), v.end(), [](std::uint8_t x) { return x <= 1; });
}

}  // namespace

std::vector<InstanceViolation> validate_instance(const Instance& in) {
  std::vector<InstanceViolation> out;
  auto add = [&](std::string field, std::string msg) { out.push_back({std::move(field), std::move(msg)}); };

  const Horizon& h = in.horizon;
  if (!h.valid()) {
    add("horizon", "num_days must be a positive multiple of 7 and periods_per_day >= 1");
    return out;  // everything else is sized by the horizon
  }
  const int J = h.num_days;
  const int T = h.periods_per_day;

  if (in.patterns.empty()) add("patterns", "no days-off patterns");
  for (int p = 0; p < in.num_patterns(); ++p) {
    const auto& pat = in.patterns[p];
    const std::string f = indexed("patterns", p);
    if (pat.id != p) add(f, "id does not match position");
    if (static_cast<int>(pat.work.size()) != J || static_cast<int>(pat.off.size()) != J) {
      add(f, "r/b length differs from num_days");
      continue;
    }
    if (!is_binary(pat.work) || !is_binary(pat.off)) add(f, "r/b entries must be binary");
    const int a = static_cast<int>(pat.off_days[0]);
    const int b = static_cast<int>(pat.off_days[1]);
    if (a < 0 || a >= kDaysPerWeek || b != (a + 1) % kDaysPerWeek) add(f, "off days are not a consecutive weekday pair");
    for (int j = 0; j < J; ++j) {
      if (pat.work[j] + pat.off[j] != 1) {
        add(f, "r + b != 1 on day " + std::to_string(j));
        break;
      }
      const int w = static_cast<int>(h.weekday(j));
      const bool off = w == a || w == b;
      if (pat.off[j] != (off ? 1 : 0)) {
        add(f, "off days differ from the weekly pair on day " + std::to_string(j));
        break;
      }
    }
  }

  if (in.duties.empty()) add("duties", "no duties");
  for (int w = 0; w < in.num_duties(); ++w) {
    const auto& d = in.duties[w];
    const std::string f = indexed("duties", w);
    if (d.id != w) add(f, "id does not match position");
    if (static_cast<int>(d.coverage.size()) != T) {
      add(f, "coverage length differs from periods_per_day");
      continue;
    }
    if (!is_binary(d.coverage)) add(f, "coverage entries must be binary");
    if (d.cost <= Rational(0)) add(f, "cost must be positive");
    if (T == kHourlyPeriods) {
      if (d.work_hours < 8 || d.work_hours > 10) add(f, "work_hours outside [8, 10]");
      if (d.pause_hours < 0 || d.pause_hours > 3) add(f, "pause_hours outside [0, 3]");
      if (d.span_hours != d.work_hours + d.pause_hours) add(f, "span_hours != work_hours + pause_hours");
      if (d.span_hours > 12) add(f, "span exceeds 12 hours");
      int covered = 0;
      for (auto c : d.coverage) covered += c;
      if (covered != d.work_hours) add(f, "coverage hours != work_hours");
      if (d.work_hours >= 8 && d.work_hours <= 10 && d.pause_hours >= 0 && d.pause_hours <= 3 &&
          d.cost != duty_cost(d.work_hours, d.pause_hours)) {
        add(f, "cost differs from the duty cost rule");
      }
      if (d.cost < Rational(8) || d.cost > Rational(11)) add(f, "cost outside [8, 11]");
    }
  }

  if (in.num_employees < 1) add("num_employees", "must be >= 1");
  const int E = std::max(0, in.num_employees);

  if (static_cast<int>(in.known_demand.size()) != J) {
    add("known_demand", "length differs from num_days");
  } else {
    for (int j = 0; j < J; ++j)
      if (in.known_demand[j] < 0) add(indexed("known_demand", j), "negative");
  }

  if (static_cast<int>(in.scenarios.size()) != J) {
    add("scenarios", "one scenario list per day required");
  } else {
    for (int j = 0; j < J; ++j) {
      const auto& list = in.scenarios[j];
      const std::string f = indexed("scenarios", j);
      if (list.empty()) {
        add(f, "day " + std::to_string(j) + " has no scenarios");
        continue;
      }
      Rational total(0);
      bool prob_ok = true;
      for (std::size_t s = 0; s < list.size(); ++s) {
        const auto& sc = list[s];
        const std::string fs = f + "[" + std::to_string(s) + "]";
        if (sc.day != j) add(fs, "day field does not match its list");
        if (static_cast<int>(sc.demand.size()) != T) add(fs, "demand length differs from periods_per_day");
        if (std::any_of(sc.demand.begin(), sc.demand.end(), [](int d) { return d < 0; })) add(fs, "negative demand");
        if (sc.probability <= Rational(0) || sc.probability > Rational(1)) {
          add(fs, "probability outside (0, 1]");
          prob_ok = false;
        }
        total += sc.probability;
      }
      if (prob_ok && total != Rational(1)) {
        add(f, "scenario probabilities of day " + std::to_string(j) + " sum to " + total.to_string() + ", not 1");
      }
    }
  }

  if (in.preferences.num_employees() != E) {
    add("preferences", "one row per employee required");
  } else {
    for (int e = 0; e < E; ++e) {
      auto row = in.preferences.scores[e];
      std::sort(row.begin(), row.end());
      bool perm = true;
      for (int i = 0; i < kNumPatterns; ++i) perm = perm && row[i] == i + 1;
      if (!perm) add(indexed("preferences", e), "not a permutation of 1..7");
    }
  }

  auto prob_in_range = [](Probability p) { return p.micros >= 0 && p.micros < kProbabilityScale; };
  const auto& q = in.absence.by_employee_day;
  if (static_cast<int>(q.size()) != E) {
    add("absence.q_pref", "one row per employee required");
  } else {
    for (int e = 0; e < E; ++e) {
      if (static_cast<int>(q[e].size()) != J) {
        add(indexed("absence.q_pref", e), "length differs from num_days");
        continue;
      }
      for (int j = 0; j < J; ++j) {
        if (!prob_in_range(q[e][j])) {
          add(indexed("absence.q_pref", e), "probability outside [0, 1) on day " + std::to_string(j));
          break;
        }
      }
    }
  }
  if (static_cast<int>(in.absence.by_day.size()) != J) {
    add("absence.q_uniform", "length differs from num_days");
  } else {
    for (int j = 0; j < J; ++j)
      if (!prob_in_range(in.absence.by_day[j])) add(indexed("absence.q_uniform", j), "probability outside [0, 1)");
  }

  if (in.costs.c1 <= Rational(0)) add("costs.c1", "must be > 0");
  if (in.costs.c3 < Rational(0)) add("costs.c3", "must be >= 0");
  if (!(in.costs.epsilon > 0.0 && in.costs.epsilon < 1.0)) add("costs.epsilon", "must lie in (0, 1)");
  return out;
}

std::vector<InstanceViolation> validate_first_stage(const Instance& in, const FirstStageSolution& fs) {
  std::vector<InstanceViolation> out;
  if (static_cast<int>(fs.pattern_of.size()) != in.num_employees) {
    out.push_back({"assignment", "expected one pattern per employee (" + std::to_string(in.num_employees) + ")"});
    return out;
  }
  for (int e = 0; e < in.num_employees; ++e) {
    const int p = fs.pattern_of[e];
    if (p < 0 || p >= in.num_patterns()) out.push_back({indexed("assignment", e), "pattern id out of range"});
  }
  return out;
}

std::string describe(const std::vector<InstanceViolation>& violations) {
  std::ostringstream os;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) os << "; ";
    os << violations[i].field << ": " << violations[i].message;
  }
  return os.str();
}

}  // namespace xb
