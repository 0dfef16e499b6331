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

#include <array>
#include <vector>

#include "xbsched/core/types.hpp"
#include "xbsched/datagen/random.hpp"

namespace xb {

enum class DurationFamily { kLogNormal, kGamma, kTruncatedNormal, kPointMass };

const char* to_string(DurationFamily f);
DurationFamily duration_family_from_string(const std::string& name);

// Meaning of (a, b) by family: log-normal (log-location, log-scale), gamma
// (shape, scale), truncated normal (mean, sd before truncation at 0),
// point mass (value, unused).
struct DurationParams {
  double a = 0.0;
  double b = 0.0;
};

struct DurationModel {
  DurationFamily family = DurationFamily::kLogNormal;
  std::array<DurationParams, kDaysPerWeek> params_by_weekday{};

  static DurationModel log_normal_with_medians(const std::array<double, kDaysPerWeek>& medians,
                                               double log_sd);
  static DurationModel point_mass(double hours);
};

// l daily unknown-absence totals (hours) for one weekday.
std::vector<double> sample_durations(const DurationModel& model, Weekday weekday, int l, Rng& rng);

using Shape = std::vector<double>;

// Shapes indexed by weekday, most recent week last.
struct ShapeLibrary {
  std::array<std::vector<Shape>, kDaysPerWeek> shapes_by_weekday;
};

// Shapes are Dirichlet draws centred on a two-peak template.
struct ShapeSynthesisConfig {
  int periods_per_day = kHourlyPeriods;
  double concentration = 150.0;
  double morning_peak = 7.0;
  double evening_peak = 16.5;
  double peak_width = 2.0;
  double base_level = 0.25;
  double weekend_peak_scale = 0.4;  // weekend peaks relative to weekdays
};

Shape template_shape(const ShapeSynthesisConfig& config, Weekday weekday);
Shape uniform_shape(int periods);
Shape sample_shape(const ShapeSynthesisConfig& config, Weekday weekday, Rng& rng);

// `weeks` shapes per weekday, as if taken from the weeks preceding a horizon.
ShapeLibrary synthesize_shape_library(const ShapeSynthesisConfig& config, int weeks, Rng& rng);

// The k most recent shapes of a weekday.
std::vector<Shape> recent_shapes(const ShapeLibrary& library, Weekday weekday, int k);

// Largest-remainder rounding: the total equals the rounded sum of `values`,
// remainder ties go to the lowest index.
std::vector<int> integerize(const std::vector<double>& values);

// Every (duration, shape) pair, duration-major, each with probability 1/(l k).
std::vector<DailyScenario> assemble_scenarios(int day, const std::vector<double>& durations,
                                              const std::vector<Shape>& shapes);

}  // namespace xb
