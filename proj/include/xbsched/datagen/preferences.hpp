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
#include <utility>
#include <vector>

#include "xbsched/core/types.hpp"
#include "xbsched/datagen/random.hpp"

namespace xb {

// Score of each pattern (index = pattern id), a permutation of 1..7.
using Ranking = std::array<int, kNumPatterns>;

// Sat-Sun 7, Sun-Mon 6, Fri-Sat 5, Thu-Fri 4, Wed-Thu 3, Tue-Wed 2, Mon-Tue 1.
Ranking modal_ranking();

bool is_ranking(const Ranking& r);

struct RankingDistribution {
  std::vector<std::pair<Ranking, double>> entries;  // (ranking, weight)

  // Mallows model over all 5040 rankings around modal_ranking(), with the
  // dispersion chosen so the modal ranking carries weight 159/1678.
  static RankingDistribution default_synthetic();
  static RankingDistribution single(const Ranking& r);

  double probability_of(const Ranking& r) const;
};

inline constexpr double kModalRankingShare = 159.0 / 1678.0;

// Rows drawn i.i.d. Throws ConfigError on an empty or invalid distribution.
PreferenceProfile sample_preferences(const RankingDistribution& dist, int num_employees, Rng& rng);

// Weekday d scores the sum of the rankings of the two patterns off on d.
std::array<int, kDaysPerWeek> day_of_week_scores(const Ranking& ranking);

// n(d) in 1..7, ascending by score with ties in Sun..Sat order; 1 = least
// preferred day off.
std::array<int, kDaysPerWeek> rank_weekdays(const std::array<int, kDaysPerWeek>& scores);

}  // namespace xb
