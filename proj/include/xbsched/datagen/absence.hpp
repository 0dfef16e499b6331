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

struct Whiskers {
  double low = 0.0;
  double high = 0.0;
};

// Quartiles by linear interpolation (type 7); whiskers are the extreme
// samples inside [Q1 - 1.5 IQR, Q3 + 1.5 IQR]. Needs at least 4 samples.
Whiskers tukey_whiskers(std::vector<double> samples);

// Type-7 sample quantile, p in [0, 1].
double quantile_type7(std::vector<double> samples, double p);

struct AbsenceRateGrid {
  std::array<Whiskers, kDaysPerWeek> whiskers{};
  // h[i][n-1] for weekday i, n = 1..7; equally spaced from low to high.
  std::array<std::array<double, 7>, kDaysPerWeek> h{};

  double at(Weekday weekday, int n) const { return h[static_cast<int>(weekday)][n - 1]; }
};

using HistoricalRates = std::array<std::vector<double>, kDaysPerWeek>;

AbsenceRateGrid grid_from_whiskers(const std::array<Whiskers, kDaysPerWeek>& whiskers);

// Throws ConfigError when a weekday has fewer than 4 samples. A weekday with
// all-equal rates collapses to a constant grid.
AbsenceRateGrid build_absence_grid(const HistoricalRates& rates);

// q_{e,j} = h_{weekday(j), n_e(weekday(j))}.
std::vector<std::vector<Probability>> assign_absence_probabilities(
    const AbsenceRateGrid& grid, const PreferenceProfile& preferences, const Horizon& horizon);

// q_j = mean historical rate of the weekday of j.
std::vector<Probability> uniform_absence_probabilities(const HistoricalRates& rates,
                                                       const Horizon& horizon);

struct AbsenceHistoryConfig {
  std::array<double, kDaysPerWeek> mean_rate{0.09, 0.08, 0.075, 0.075, 0.08, 0.09, 0.10};
  double rate_sd = 0.03;
  int samples_per_weekday = 104;  // two years of weeks
};

// Normal draws clipped to [0, 0.5].
HistoricalRates synthesize_absence_history(const AbsenceHistoryConfig& config, Rng& rng);

}  // namespace xb
