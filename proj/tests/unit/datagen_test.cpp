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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "xbsched/core/capacity.hpp"
#include "xbsched/core/error.hpp"
#include "xbsched/core/instance_io.hpp"
#include "xbsched/core/validate.hpp"
#include "xbsched/datagen/absence.hpp"
#include "xbsched/datagen/generator.hpp"
#include "xbsched/datagen/preferences.hpp"
#include "xbsched/datagen/scenarios.hpp"

using namespace xb;

TEST_CASE("sample_durations") {
  Rng rng = substream(7, "t");
  const auto pm = sample_durations(DurationModel::point_mass(240), Weekday::kMonday, 5, rng);
  CHECK(pm == std::vector<double>(5, 240.0));

  const auto model = DurationModel::log_normal_with_medians({200, 200, 200, 200, 200, 200, 200}, 0.3);
  Rng a = substream(1, "d"), b = substream(1, "d");
  CHECK(sample_durations(model, Weekday::kTuesday, 50, a) == sample_durations(model, Weekday::kTuesday, 50, b));

  Rng big = substream(3, "median");
  auto draws = sample_durations(model, Weekday::kTuesday, 100000, big);
  std::nth_element(draws.begin(), draws.begin() + draws.size() / 2, draws.end());
  CHECK(std::abs(draws[draws.size() / 2] - 200.0) < 0.05 * 200.0);

  for (auto fam : {DurationFamily::kGamma, DurationFamily::kTruncatedNormal}) {
    DurationModel m;
    m.family = fam;
    for (auto& p : m.params_by_weekday) p = fam == DurationFamily::kGamma ? DurationParams{4, 50} : DurationParams{10, 30};
    Rng r = substream(5, "fam");
    for (double v : sample_durations(m, Weekday::kFriday, 2000, r)) CHECK(v >= 0.0);
  }
}

TEST_CASE("integerize and scenario assembly") {
  CHECK(integerize({0.5, 0.5, 0.5, 0.5}) == std::vector<int>{1, 1, 0, 0});
  CHECK(integerize({1.2, 2.7, 0.1}) == std::vector<int>{1, 3, 0});

  const auto sc = assemble_scenarios(0, {240.0}, {uniform_shape(24)});
  REQUIRE(sc.size() == 1);
  CHECK(sc[0].demand == std::vector<int>(24, 10));
  CHECK(sc[0].probability == Rational(1));

  const auto zero = assemble_scenarios(2, {0.0}, {uniform_shape(24)});
  CHECK(zero[0].demand == std::vector<int>(24, 0));

  ShapeSynthesisConfig cfg;
  Rng rng = substream(9, "shapes");
  std::vector<Shape> shapes;
  for (int i = 0; i < 3; ++i) shapes.push_back(sample_shape(cfg, Weekday::kWednesday, rng));
  const std::vector<double> durs{123.4, 88.8};
  const auto six = assemble_scenarios(3, durs, shapes);
  REQUIRE(six.size() == 6);
  for (std::size_t i = 0; i < six.size(); ++i) {
    CHECK(six[i].probability == Rational(1, 6));
    CHECK(six[i].day == 3);
    const int total = std::accumulate(six[i].demand.begin(), six[i].demand.end(), 0);
    CHECK(std::abs(total - durs[i / 3]) < 1.0);
  }
  for (const auto& s : shapes) {
    CHECK(std::abs(std::accumulate(s.begin(), s.end(), 0.0) - 1.0) < 1e-9);
    for (double v : s) CHECK(v >= 0.0);
  }
}

TEST_CASE("preference sampling") {
  const Ranking modal = modal_ranking();
  Rng rng = substream(11, "p");
  const auto one = sample_preferences(RankingDistribution::single(modal), 20, rng);
  for (const auto& row : one.scores) CHECK(row == modal);

  const auto dist = RankingDistribution::default_synthetic();
  CHECK(dist.entries.size() == 5040);
  CHECK(dist.probability_of(modal) == doctest::Approx(kModalRankingShare).epsilon(1e-9));
  for (const auto& [r, w] : dist.entries) CHECK(w <= dist.probability_of(modal) + 1e-15);

  Rng a = substream(4, "pref"), b = substream(4, "pref");
  CHECK(sample_preferences(dist, 30, a).scores == sample_preferences(dist, 30, b).scores);

  const int n = 100000;
  Rng big = substream(12, "freq");
  const auto prof = sample_preferences(dist, n, big);
  const double hits = static_cast<double>(std::count(prof.scores.begin(), prof.scores.end(), modal));
  const double p = kModalRankingShare;
  CHECK(std::abs(hits / n - p) <= 3.0 * std::sqrt(p * (1 - p) / n));

  CHECK_THROWS_AS(sample_preferences(RankingDistribution{}, 3, rng), ConfigError);
}

TEST_CASE("weekday scores and ranks") {
  const auto s = day_of_week_scores(modal_ranking());
  // Sun..Sat
  CHECK(s == std::array<int, 7>{13, 7, 3, 5, 7, 9, 12});
  CHECK(std::accumulate(s.begin(), s.end(), 0) == 56);

  const auto n = rank_weekdays(s);
  CHECK(n == std::array<int, 7>{7, 3, 1, 2, 4, 5, 6});

  // Reversed ranking: each pattern's score r -> 8 - r, so each weekday score becomes 16 - s.
  Ranking rev{};
  for (int p = 0; p < 7; ++p) rev[p] = 8 - modal_ranking()[p];
  const auto sr = day_of_week_scores(rev);
  for (int d = 0; d < 7; ++d) CHECK(sr[d] == 16 - s[d]);

  CHECK(rank_weekdays({4, 4, 4, 4, 4, 4, 4}) == std::array<int, 7>{1, 2, 3, 4, 5, 6, 7});
  CHECK(rank_weekdays({1, 2, 3, 4, 5, 6, 7}) == std::array<int, 7>{1, 2, 3, 4, 5, 6, 7});
}

TEST_CASE("absence grid and probabilities") {
  std::array<Whiskers, 7> w{};
  for (auto& x : w) x = {0.05, 0.11};
  w[0] = {0.022, 0.154};
  w[3] = {0.038, 0.171};
  const auto grid = grid_from_whiskers(w);
  CHECK(grid.at(Weekday::kSunday, 1) == doctest::Approx(0.022));
  CHECK(grid.at(Weekday::kSunday, 7) == 0.154);
  CHECK(grid.at(Weekday::kSunday, 4) == doctest::Approx(0.088));
  CHECK(std::abs(grid.at(Weekday::kWednesday, 2) - 0.060) <= 0.0005);
  for (int i = 0; i < 7; ++i)
    for (int n = 1; n < 6; ++n)
      CHECK(grid.h[i][n + 1] - grid.h[i][n] == doctest::Approx(grid.h[i][n] - grid.h[i][n - 1]).epsilon(1e-9));

  PreferenceProfile prof;
  prof.scores.push_back(modal_ranking());
  const auto q = assign_absence_probabilities(grid, prof, Horizon{14, 24});
  CHECK(q[0][3] == q[0][10]);  // days 4 and 11 (1-based) are Wednesdays
  CHECK(std::abs(q[0][3].value() - 0.060) <= 0.0005);
  CHECK(q[0][0].value() == doctest::Approx(0.154));
  for (int j = 0; j < 7; ++j) CHECK(q[0][j] == q[0][j + 7]);
}

TEST_CASE("Tukey whiskers") {
  // Quartiles (type 7) of 1..8: 2.75 and 6.25; fences -2.5 and 11.5.
  CHECK(quantile_type7({1, 2, 3, 4, 5, 6, 7, 8}, 0.25) == doctest::Approx(2.75));
  const auto w = tukey_whiskers({1, 2, 3, 4, 5, 6, 7, 8, 40});
  CHECK(w.low == 1.0);
  CHECK(w.high == 8.0);
  const auto flat = tukey_whiskers({0.1, 0.1, 0.1, 0.1});
  CHECK(flat.low == 0.1);
  CHECK(flat.high == 0.1);
  CHECK_THROWS_AS(tukey_whiskers({1, 2, 3}), ConfigError);

  HistoricalRates rates;
  for (auto& r : rates) r = {0.1, 0.1, 0.1, 0.1, 0.1};
  const auto g = build_absence_grid(rates);
  for (double h : g.h[2]) CHECK(h == 0.1);
}

TEST_CASE("generate_instance") {
  GenConfig c;
  c.seed = 42;
  const Instance in = generate_instance(c);
  CHECK(validate_instance(in).empty());
  CHECK(in.num_employees == 50);
  CHECK(in.scenarios[0].size() == 100);
  CHECK(in.duties.size() == 120);
  const auto witness = round_robin_assignment(in.num_employees);
  for (int j = 0; j < in.num_days(); ++j) {
    CHECK(day_capacity(in, witness, AbsenceVariant::kPreferenceAware, j).covers(in.known_demand[j]));
    CHECK(day_capacity(in, witness, AbsenceVariant::kUniform, j).covers(in.known_demand[j]));
  }
  // q depends on the day only through its weekday.
  for (int e = 0; e < in.num_employees; ++e)
    for (int j = 0; j < 7; ++j) CHECK(in.absence.by_employee_day[e][j] == in.absence.by_employee_day[e][j + 7]);

  const std::string first = dump_canonical(instance_to_json(in));
  CHECK(first == dump_canonical(instance_to_json(generate_instance(c))));
  c.seed = 43;
  CHECK(first != dump_canonical(instance_to_json(generate_instance(c))));

  const auto held = generate_heldout_scenarios(c, 5, 1);
  REQUIRE(held.size() == 14);
  CHECK(held[0].size() == 5);
  CHECK(held[0][0].probability == Rational(1, 5));
  CHECK(held[0][0].demand != generate_heldout_scenarios(c, 5, 2)[0][0].demand);
}

TEST_CASE("uniform rate sits inside the whiskers") {
  Rng rng = substream(5, "hist");
  const auto hist = synthesize_absence_history(AbsenceHistoryConfig{}, rng);
  const auto grid = build_absence_grid(hist);
  const auto q = uniform_absence_probabilities(hist, Horizon{7, 24});
  for (int i = 0; i < 7; ++i) {
    const auto& w = grid.whiskers[i];
    CHECK(std::abs(q[i].value() - grid.h[i][3]) <= (w.high - w.low) / 2 + 1e-6);
  }
}

TEST_CASE("generator config round trip and rejection") {
  GenConfig c = desk_scale_config(9);
  const auto doc = gen_config_to_json(c);
  const GenConfig back = gen_config_from_json(doc);
  CHECK(gen_config_to_json(back) == doc);
  CHECK(config_hash(doc) == config_hash(gen_config_to_json(back)));
  CHECK(dump_canonical(instance_to_json(generate_instance(back))) ==
        dump_canonical(instance_to_json(generate_instance(c))));

  auto bad = doc;
  bad["bogus"] = 1;
  CHECK_THROWS_AS(gen_config_from_json(bad), ConfigError);
  auto neg = doc;
  neg["num_employees"] = 0;
  CHECK_THROWS_AS(generate_instance(gen_config_from_json(neg)), ConfigError);
  nlohmann::json medians = {{"durations", {{"family", "lognormal"}, {"medians", {1, 2, 3, 4, 5, 6, 7}}}},
                            {"costs", {{"c3", 0.75}}}};
  const auto m = gen_config_from_json(medians);
  CHECK(m.costs.c3 == Rational(3, 4));
  CHECK(std::exp(m.durations.params_by_weekday[6].a) == doctest::Approx(7.0));
}

TEST_CASE("tiny instances and CSV") {
  const Instance t = generate_tiny_instance(TinyConfig{}, 3);
  CHECK(validate_instance(t).empty());
  CHECK(t.num_duties() == 4);
  const auto csv = scenarios_to_csv(t.scenarios);
  CHECK(csv.rfind("day,scenario,period,demand\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 7 * 2 * 6);
}
