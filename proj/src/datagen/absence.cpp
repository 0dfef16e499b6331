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

#include "xbsched/datagen/absence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "xbsched/core/error.hpp"
#include "xbsched/datagen/preferences.hpp"

namespace xb {

double quantile_type7(std::vector<double> samples, double p) {
  if (samples.empty()) throw std::invalid_argument("quantile of an empty sample");
  std::sort(samples.begin(), samples.end());
  const double pos = p * static_cast<double>(samples.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, samples.size() - 1);
  return samples[lo] + (pos - static_cast<double>(lo)) * (samples[hi] - samples[lo]);
}

Whiskers tukey_whiskers(std::vector<double> samples) {
  if (samples.size() < 4) throw ConfigError("whiskers need at least 4 samples");
  const double q1 = quantile_type7(samples, 0.25);
  const double q3 = quantile_type7(samples, 0.75);
  const double iqr = q3 - q1;
  const double lo_fence = q1 - 1.5 * iqr;
  const double hi_fence = q3 + 1.5 * iqr;
  Whiskers w{q3, q1};
  bool any = false;
  for (double v : samples) {
    if (v < lo_fence || v > hi_fence) continue;
    if (!any) {
      w = {v, v};
      any = true;
    }
    w.low = std::min(w.low, v);
    w.high = std::max(w.high, v);
  }
  return w;
}

AbsenceRateGrid grid_from_whiskers(const std::array<Whiskers, kDaysPerWeek>& whiskers) {
  AbsenceRateGrid g;
  g.whiskers = whiskers;
  for (int i = 0; i < kDaysPerWeek; ++i) {
    const double lo = whiskers[i].low, hi = whiskers[i].high;
    if (!(lo >= 0.0 && hi >= lo && hi < 1.0)) throw ConfigError("whiskers must satisfy 0 <= low <= high < 1");
    const double step = (hi - lo) / 6.0;
    for (int n = 0; n < 7; ++n) g.h[i][n] = n == 6 ? hi : lo + n * step;
  }
  return g;
}

AbsenceRateGrid build_absence_grid(const HistoricalRates& rates) {
  std::array<Whiskers, kDaysPerWeek> w{};
  for (int i = 0; i < kDaysPerWeek; ++i) w[i] = tukey_whiskers(rates[i]);
  return grid_from_whiskers(w);
}

std::vector<std::vector<Probability>> assign_absence_probabilities(
    const AbsenceRateGrid& grid, const PreferenceProfile& preferences, const Horizon& horizon) {
  std::vector<std::vector<Probability>> q;
  q.reserve(preferences.scores.size());
  for (const auto& row : preferences.scores) {
    const auto n = rank_weekdays(day_of_week_scores(row));
    std::vector<Probability> qe(horizon.num_days);
    for (int j = 0; j < horizon.num_days; ++j) {
      const Weekday w = horizon.weekday(j);
      qe[j] = Probability::from_double(grid.at(w, n[static_cast<int>(w)]));
    }
    q.push_back(std::move(qe));
  }
  return q;
}

std::vector<Probability> uniform_absence_probabilities(const HistoricalRates& rates, const Horizon& horizon) {
  std::array<Probability, kDaysPerWeek> by_weekday{};
  for (int i = 0; i < kDaysPerWeek; ++i) {
    if (rates[i].empty()) throw ConfigError("no historical absence rates for a weekday");
    const double mean = std::accumulate(rates[i].begin(), rates[i].end(), 0.0) / rates[i].size();
    by_weekday[i] = Probability::from_double(mean);
  }
  std::vector<Probability> q(horizon.num_days);
  for (int j = 0; j < horizon.num_days; ++j) q[j] = by_weekday[static_cast<int>(horizon.weekday(j))];
  return q;
}

HistoricalRates synthesize_absence_history(const AbsenceHistoryConfig& config, Rng& rng) {
  if (config.samples_per_weekday < 4) throw ConfigError("absence history needs >= 4 samples per weekday");
  HistoricalRates rates;
  for (int i = 0; i < kDaysPerWeek; ++i) {
    std::normal_distribution<double> dist(config.mean_rate[i], config.rate_sd);
    for (int s = 0; s < config.samples_per_weekday; ++s) rates[i].push_back(std::clamp(dist(rng), 0.0, 0.5));
  }
  return rates;
}

}  // namespace xb
