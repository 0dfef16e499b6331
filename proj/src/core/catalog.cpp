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

#include "xbsched/core/catalog.hpp"

#include <cmath>
#include <stdexcept>

#include "xbsched/core/error.hpp"

namespace xb {

const char* weekday_name(Weekday d) {
  static constexpr const char* kNames[] = {"Sun", "Mon", "Tue", "Wed", "Thu", "Fri", "Sat"};
  return kNames[static_cast<int>(d)];
}

std::string DaysOffPattern::label() const {
  return std::string(weekday_name(off_days[0])) + "-" + weekday_name(off_days[1]);
}

Probability Probability::from_double(double p) {
  return Probability{static_cast<std::int64_t>(std::llround(p * kProbabilityScale))};
}

std::vector<DaysOffPattern> build_pattern_catalog(const Horizon& horizon) {
  if (!horizon.valid()) throw std::invalid_argument("horizon length must be a positive multiple of 7");
  std::vector<DaysOffPattern> patterns;
  for (int p = 0; p < kNumPatterns; ++p) {
    DaysOffPattern pat;
    pat.id = p;
    pat.off_days = {static_cast<Weekday>(p), static_cast<Weekday>((p + 1) % kDaysPerWeek)};
    pat.work.assign(horizon.num_days, 1);
    pat.off.assign(horizon.num_days, 0);
    for (int j = 0; j < horizon.num_days; ++j) {
      const Weekday w = horizon.weekday(j);
      if (w == pat.off_days[0] || w == pat.off_days[1]) {
        pat.off[j] = 1;
        pat.work[j] = 0;
      }
    }
    patterns.push_back(std::move(pat));
  }
  return patterns;
}

Rational duty_cost(int work_hours, int pause_hours) {
  if (work_hours < 8 || work_hours > 10) throw std::invalid_argument("duty work hours must be in [8, 10]");
  if (pause_hours < 0 || pause_hours > 3) throw std::invalid_argument("duty pause hours must be in [0, 3]");
  return Rational(8) + Rational(3, 2) * Rational(work_hours - 8) + Rational(1, 2) * Rational(pause_hours);
}

Duty make_duty(int id, int start_period, int work_hours, int pause_hours, int periods_per_day) {
  Duty d;
  d.id = id;
  d.start_period = start_period;
  d.work_hours = work_hours;
  d.pause_hours = pause_hours;
  d.span_hours = work_hours + pause_hours;
  d.cost = duty_cost(work_hours, pause_hours);
  d.coverage.assign(periods_per_day, 0);
  const int first = pause_hours > 0 ? work_hours / 2 : work_hours;
  for (int k = 0; k < d.span_hours; ++k) {
    const bool paused = pause_hours > 0 && k >= first && k < first + pause_hours;
    if (!paused) d.coverage[(start_period + k) % periods_per_day] = 1;
  }
  return d;
}

std::vector<Duty> build_duty_catalog(const DutyGenConfig& config) {
  if (config.periods_per_day != kHourlyPeriods) {
    throw ConfigError("duty catalog requires hourly periods (24 per day)");
  }
  std::vector<int> starts = config.start_periods;
  if (starts.empty()) {
    for (int t = 0; t < config.periods_per_day; ++t) starts.push_back(t);
  }
  std::vector<Duty> duties;
  for (int s : starts) {
    if (s < 0 || s >= config.periods_per_day) throw ConfigError("duty start period out of range");
    for (int w : config.work_hours) {
      for (int p : config.pause_hours) {
        if (w < 8 || w > 10 || p < 0 || p > 3) throw ConfigError("duty work/pause hours out of range");
        if (w + p > config.max_span_hours || w + p > config.periods_per_day) continue;
        duties.push_back(make_duty(static_cast<int>(duties.size()), s, w, p, config.periods_per_day));
      }
    }
  }
  if (duties.empty()) throw ConfigError("duty catalog configuration yields no duties");
  return duties;
}

}  // namespace xb
