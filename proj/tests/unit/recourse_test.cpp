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

#include <stdexcept>

#include "xbsched/core/capacity.hpp"
#include "xbsched/core/catalog.hpp"
#include "xbsched/datagen/generator.hpp"
#include "xbsched/recourse/recourse.hpp"

using namespace xb;

namespace {

Duty toy_duty(int id, std::vector<std::uint8_t> cover, Rational cost) {
  Duty d;
  d.id = id;
  d.coverage = std::move(cover);
  d.cost = cost;
  return d;
}

}  // namespace

TEST_CASE("recourse examples") {
  const auto duties = build_duty_catalog();
  std::vector<int> demand(24, 0);
  demand[0] = 5;
  const auto none = solve_recourse_exact(duties, demand, 0, Rational(10));
  CHECK(none.cost == Rational(50));
  CHECK(none.understaffing[0] == 5);
  CHECK(none.total_duties() == 0);

  const std::vector<Duty> one{toy_duty(0, {1, 1}, Rational(8))};
  const auto r = solve_recourse_exact(one, {1, 0}, 1, Rational(10));
  CHECK(r.duty_counts == std::vector<int>{1});
  CHECK(r.understaffing == std::vector<int>{0, 0});
  CHECK(r.overstaffing == std::vector<int>{0, 1});
  CHECK(r.cost == Rational(8));

  const auto idle = solve_recourse_exact(duties, std::vector<int>(24, 0), 3, Rational(10));
  CHECK(idle.cost == Rational(24));
  CHECK(idle.cancelled_hours() == 0);
  CHECK(idle.overstaffed_hours() == 24);

  CHECK_THROWS_AS(solve_recourse_exact(duties, demand, -1, Rational(10)), std::invalid_argument);
  CHECK_THROWS_AS(solve_recourse_exact(one, {1, 0, 0}, 1, Rational(10)), std::invalid_argument);
}

TEST_CASE("recourse MILP matches multiset enumeration") {
  Rng rng = substream(77, "recourse-prop");
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  int compared = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int T = uni(2, 6), W = uni(1, 6), N = uni(0, 4);
    std::vector<Duty> duties;
    for (int w = 0; w < W; ++w) {
      std::vector<std::uint8_t> cover(T);
      for (auto& c : cover) c = static_cast<std::uint8_t>(uni(0, 1));
      duties.push_back(toy_duty(w, cover, duty_cost(uni(8, 10), uni(0, 3))));
    }
    std::vector<int> demand(T);
    for (auto& d : demand) d = uni(0, 4);
    const Rational c1(uni(1, 12));
    const auto a = solve_recourse_exact(duties, demand, N, c1);
    const auto b = solve_recourse_enumeration(duties, demand, N, c1);
    CHECK(a.cost == b.cost);
    CHECK(a.total_duties() == N);
    CHECK(b.total_duties() == N);
    for (int t = 0; t < T; ++t) {
      CHECK(a.understaffing[t] * a.overstaffing[t] == 0);
      int cover = 0;
      for (int w = 0; w < W; ++w) cover += duties[w].coverage[t] * a.duty_counts[w];
      CHECK(cover + a.understaffing[t] - a.overstaffing[t] == demand[t]);
    }
    if (N < 4) {
      const auto more = solve_recourse_exact(duties, demand, N + 1, c1);
      CHECK(more.cancelled_hours() <= a.cancelled_hours());
    }
    ++compared;
  }
  CHECK(compared == 300);
}

TEST_CASE("enumeration breaks ties lexicographically") {
  const std::vector<Duty> same{toy_duty(0, {1, 0}, Rational(8)), toy_duty(1, {1, 0}, Rational(8)),
                               toy_duty(2, {0, 1}, Rational(8))};
  const auto r = solve_recourse_enumeration(same, {0, 0}, 2, Rational(10));
  CHECK(r.duty_counts == std::vector<int>{2, 0, 0});
  CHECK_THROWS_AS(solve_recourse_enumeration(build_duty_catalog(), std::vector<int>(24, 0), 10, Rational(10), 1000),
                  std::length_error);
}

TEST_CASE("first-stage enumeration") {
  SUBCASE("single employee, no absences, no demand") {
    TinyConfig tc;
    tc.num_employees = 1;
    Instance in = generate_tiny_instance(tc, 1);
    for (auto& row : in.absence.by_employee_day)
      for (auto& q : row) q = Probability{0};
    for (auto& o : in.known_demand) o = 0;
    for (auto& day : in.scenarios)
      for (auto& s : day) std::fill(s.demand.begin(), s.demand.end(), 0);
    // One duty per working day is forced (N = 1 when working); make duties free to isolate welfare.
    const auto res = enumerate_first_stage(in);
    REQUIRE(res.feasible);
    const int fav = static_cast<int>(std::max_element(in.preferences.scores[0].begin(), in.preferences.scores[0].end()) -
                                     in.preferences.scores[0].begin());
    CHECK(res.best.pattern_of[0] == fav);
    CHECK(res.table.size() == 7);
    // Every pattern works 5 days with N = 1, so recourse cost is identical and welfare decides.
    Rational cheapest = in.duties[0].cost;
    for (const auto& d : in.duties) cheapest = std::min(cheapest, d.cost);
    CHECK(res.best_objective == Rational(5) * cheapest - in.costs.c3 * Rational(7));
  }
  SUBCASE("opposite preferences with slack capacity") {
    TinyConfig tc;
    tc.num_employees = 2;
    Instance in = generate_tiny_instance(tc, 2);
    for (auto& row : in.absence.by_employee_day)
      for (auto& q : row) q = Probability{0};
    for (auto& o : in.known_demand) o = 0;
    for (auto& day : in.scenarios)
      for (auto& s : day) std::fill(s.demand.begin(), s.demand.end(), 0);
    in.preferences.scores[0] = {7, 6, 5, 4, 3, 2, 1};
    in.preferences.scores[1] = {1, 2, 3, 4, 5, 6, 7};
    const auto res = enumerate_first_stage(in);
    REQUIRE(res.feasible);
    CHECK(res.best.pattern_of == std::vector<int>{0, 6});
  }
  SUBCASE("too large") {
    TinyConfig tc;
    tc.num_employees = 8;
    CHECK_THROWS_AS(enumerate_first_stage(generate_tiny_instance(tc, 3)), std::length_error);
  }
}

TEST_CASE("recourse cache reuses solves") {
  const Instance in = generate_tiny_instance(TinyConfig{}, 4);
  RecourseCache cache(in);
  const auto& a = cache.get(in.scenarios, 2, 1, 2);
  const auto& b = cache.get(in.scenarios, 2, 1, 2);
  CHECK(&a == &b);
  CHECK(cache.solves() == 1);
  CHECK(a.cost == solve_recourse_exact(in.duties, in.scenarios[2][1].demand, 2, in.costs.c1).cost);
}
