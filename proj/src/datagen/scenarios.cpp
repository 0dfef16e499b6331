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

#include "xbsched/datagen/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "xbsched/core/error.hpp"

namespace xb {

const char* to_string(DurationFamily f) {
  switch (f) {
    case DurationFamily::kLogNormal: return "lognormal";
    case DurationFamily::kGamma: return "gamma";
    case DurationFamily::kTruncatedNormal: return "truncated_normal";
    case DurationFamily::kPointMass: return "point_mass";
  }
  return "unknown";
}

DurationFamily duration_family_from_string(const std::string& name) {
  for (auto f : {DurationFamily::kLogNormal, DurationFamily::kGamma, DurationFamily::kTruncatedNormal,
                 DurationFamily::kPointMass}) {
    if (name == to_string(f)) return f;
  }
  throw ConfigError("unknown duration family '" + name + "'");
}

DurationModel DurationModel::log_normal_with_medians(const std::array<double, kDaysPerWeek>& medians,
                                                     double log_sd) {
  DurationModel m;
  m.family = DurationFamily::kLogNormal;
  for (int i = 0; i < kDaysPerWeek; ++i) {
    if (medians[i] <= 0.0) throw ConfigError("log-normal median must be positive");
    m.params_by_weekday[i] = {std::log(medians[i]), log_sd};
  }
  return m;
}

DurationModel DurationModel::point_mass(double hours) {
  DurationModel m;
  m.family = DurationFamily::kPointMass;
  for (auto& p : m.params_by_weekday) p = {hours, 0.0};
  return m;
}

std::vector<double> sample_durations(const DurationModel& model, Weekday weekday, int l, Rng& rng) {
  const DurationParams& p = model.params_by_weekday[static_cast<int>(weekday)];
  std::vector<double> out;
  out.reserve(l);
  switch (model.family) {
    case DurationFamily::kLogNormal: {
      std::lognormal_distribution<double> dist(p.a, p.b);
      for (int i = 0; i < l; ++i) out.push_back(dist(rng));
      break;
    }
    case DurationFamily::kGamma: {
      std::gamma_distribution<double> dist(p.a, p.b);
      for (int i = 0; i < l; ++i) out.push_back(dist(rng));
      break;
    }
    case DurationFamily::kTruncatedNormal: {
      std::normal_distribution<double> dist(p.a, p.b);
      for (int i = 0; i < l; ++i) {
        double v = dist(rng);
        for (int tries = 0; v < 0.0 && tries < 1000; ++tries) v = dist(rng);
        out.push_back(std::max(0.0, v));
      }
      break;
    }
    case DurationFamily::kPointMass:
      out.assign(l, std::max(0.0, p.a));
      break;
  }
  return out;
}

Shape template_shape(const ShapeSynthesisConfig& c, Weekday weekday) {
  const bool weekend = weekday == Weekday::kSaturday || weekday == Weekday::kSunday;
  const double scale = weekend ? c.weekend_peak_scale : 1.0;
  Shape s(c.periods_per_day);
  const double hours_per_period = 24.0 / c.periods_per_day;
  for (int t = 0; t < c.periods_per_day; ++t) {
    const double hour = (t + 0.5) * hours_per_period;
    auto bump = [&](double centre) {
      const double d = (hour - centre) / c.peak_width;
      return std::exp(-0.5 * d * d);
    };
    // Service is thin overnight: scale the base by a daytime window.
    const double daytime = hour >= 5.0 && hour <= 23.0 ? 1.0 : 0.3;
    s[t] = c.base_level * daytime + scale * (bump(c.morning_peak) + bump(c.evening_peak));
  }
  const double total = std::accumulate(s.begin(), s.end(), 0.0);
  for (auto& v : s) v /= total;
  return s;
}

Shape uniform_shape(int periods) { return Shape(periods, 1.0 / periods); }

Shape sample_shape(const ShapeSynthesisConfig& c, Weekday weekday, Rng& rng) {
  const Shape base = template_shape(c, weekday);
  Shape s(base.size());
  double total = 0.0;
  for (std::size_t t = 0; t < base.size(); ++t) {
    std::gamma_distribution<double> g(c.concentration * base[t], 1.0);
    s[t] = g(rng);
    total += s[t];
  }
  if (total <= 0.0) return base;
  for (auto& v : s) v /= total;
  return s;
}

ShapeLibrary synthesize_shape_library(const ShapeSynthesisConfig& config, int weeks, Rng& rng) {
  if (weeks < 1) throw ConfigError("shape history needs at least one week");
  ShapeLibrary lib;
  for (int w = 0; w < weeks; ++w)
    for (int d = 0; d < kDaysPerWeek; ++d)
      lib.shapes_by_weekday[d].push_back(sample_shape(config, static_cast<Weekday>(d), rng));
  return lib;
}

std::vector<Shape> recent_shapes(const ShapeLibrary& library, Weekday weekday, int k) {
  const auto& all = library.shapes_by_weekday[static_cast<int>(weekday)];
  if (k < 1 || k > static_cast<int>(all.size())) {
    throw ConfigError("shape library holds " + std::to_string(all.size()) + " shapes, " +
                      std::to_string(k) + " requested");
  }
  return std::vector<Shape>(all.end() - k, all.end());
}

std::vector<int> integerize(const std::vector<double>& values) {
  std::vector<int> out(values.size());
  const double total = std::accumulate(values.begin(), values.end(), 0.0);
  const long target = std::lround(total);
  long assigned = 0;
  std::vector<std::pair<double, int>> rem;
  rem.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < 0.0) throw std::invalid_argument("integerize expects non-negative values");
    const double f = std::floor(values[i]);
    out[i] = static_cast<int>(f);
    assigned += out[i];
    rem.push_back({values[i] - f, static_cast<int>(i)});
  }
  std::stable_sort(rem.begin(), rem.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  for (long r = 0; r < target - assigned && r < static_cast<long>(rem.size()); ++r) ++out[rem[r].second];
  return out;
}

std::vector<DailyScenario> assemble_scenarios(int day, const std::vector<double>& durations,
                                              const std::vector<Shape>& shapes) {
  const int n = static_cast<int>(durations.size() * shapes.size());
  std::vector<DailyScenario> out;
  out.reserve(n);
  for (double dur : durations) {
    for (const auto& shape : shapes) {
      std::vector<double> raw(shape.size());
      for (std::size_t t = 0; t < shape.size(); ++t) raw[t] = dur * shape[t];
      out.push_back({day, integerize(raw), Rational(1, n)});
    }
  }
  return out;
}

}  // namespace xb
