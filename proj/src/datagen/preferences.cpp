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

#include "xbsched/datagen/preferences.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "xbsched/core/error.hpp"

namespace xb {

Ranking modal_ranking() { return {6, 1, 2, 3, 4, 5, 7}; }

bool is_ranking(const Ranking& r) {
  Ranking s = r;
  std::sort(s.begin(), s.end());
  for (int i = 0; i < kNumPatterns; ++i)
    if (s[i] != i + 1) return false;
  return true;
}

namespace {

int kendall_distance(const Ranking& a, const Ranking& b) {
  int d = 0;
  for (int i = 0; i < kNumPatterns; ++i)
    for (int j = i + 1; j < kNumPatterns; ++j)
      if ((a[i] < a[j]) != (b[i] < b[j])) ++d;
  return d;
}

// 1/Z for a Mallows model on 7 items: Z = prod_{i=1..7} (1 - e^{-i t}) / (1 - e^{-t}).
double modal_share(double theta) {
  double z = 1.0;
  const double q = std::exp(-theta);
  for (int i = 1; i <= kNumPatterns; ++i) z *= (1.0 - std::pow(q, i)) / (1.0 - q);
  return 1.0 / z;
}

}  // namespace

RankingDistribution RankingDistribution::default_synthetic() {
  double lo = 1e-3, hi = 20.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (modal_share(mid) < kModalRankingShare) lo = mid; else hi = mid;
  }
  const double theta = 0.5 * (lo + hi);
  const Ranking centre = modal_ranking();

  RankingDistribution dist;
  Ranking r{1, 2, 3, 4, 5, 6, 7};
  double total = 0.0;
  do {
    const double w = std::exp(-theta * kendall_distance(r, centre));
    dist.entries.push_back({r, w});
    total += w;
  } while (std::next_permutation(r.begin(), r.end()));
  for (auto& e : dist.entries) e.second /= total;
  return dist;
}

RankingDistribution RankingDistribution::single(const Ranking& r) {
  RankingDistribution d;
  d.entries.push_back({r, 1.0});
  return d;
}

double RankingDistribution::probability_of(const Ranking& r) const {
  double total = 0.0, hit = 0.0;
  for (const auto& e : entries) {
    total += e.second;
    if (e.first == r) hit += e.second;
  }
  return total > 0.0 ? hit / total : 0.0;
}

PreferenceProfile sample_preferences(const RankingDistribution& dist, int num_employees, Rng& rng) {
  if (dist.entries.empty()) throw ConfigError("ranking distribution is empty");
  std::vector<double> weights;
  for (const auto& e : dist.entries) {
    if (!is_ranking(e.first)) throw ConfigError("ranking distribution holds a non-permutation");
    if (!(e.second >= 0.0)) throw ConfigError("ranking weights must be non-negative");
    weights.push_back(e.second);
  }
  if (std::accumulate(weights.begin(), weights.end(), 0.0) <= 0.0) {
    throw ConfigError("ranking weights sum to zero");
  }
  std::discrete_distribution<int> pick(weights.begin(), weights.end());
  PreferenceProfile prof;
  prof.scores.reserve(num_employees);
  for (int e = 0; e < num_employees; ++e) prof.scores.push_back(dist.entries[pick(rng)].first);
  return prof;
}

std::array<int, kDaysPerWeek> day_of_week_scores(const Ranking& ranking) {
  std::array<int, kDaysPerWeek> s{};
  for (int d = 0; d < kDaysPerWeek; ++d) {
    // Pattern d is off on (d, d+1); pattern d-1 on (d-1, d).
    s[d] = ranking[d] + ranking[(d + kDaysPerWeek - 1) % kDaysPerWeek];
  }
  return s;
}

std::array<int, kDaysPerWeek> rank_weekdays(const std::array<int, kDaysPerWeek>& scores) {
  std::array<int, kDaysPerWeek> order{};
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return scores[a] < scores[b]; });
  std::array<int, kDaysPerWeek> n{};
  for (int pos = 0; pos < kDaysPerWeek; ++pos) n[order[pos]] = pos + 1;
  return n;
}

}  // namespace xb
