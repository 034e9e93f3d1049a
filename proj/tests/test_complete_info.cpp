// Copyright 2026 The Authors.
//
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "netgame/complete_info.hpp"
#include "netgame/rng.hpp"
#include "test_support.hpp"

using namespace netgame;

namespace {

// Two units linked both ways, alpha - eps = -0.5 each, beta = 1:
// (0,0) and (1,1) are the only equilibria.
Game coordination_game() {
  Network net(2, {{0, 1}}, false);
  Covariates cov(2, 1, {0.0, 0.0});
  Theta theta;
  theta.theta0 = -0.5;
  theta.theta2 = {0.0};
  theta.theta3 = {0.0};
  theta.theta5 = 1.0;
  return Game(std::move(net), std::move(cov), std::move(theta),
              ShockDistribution(ShockKind::logistic));
}

Game beta_zero_game(int n, double theta0) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  Network net(n, edges, false);
  Covariates cov(n, 1, std::vector<double>(n, 0.0));
  Theta theta;
  theta.theta0 = theta0;
  theta.theta2 = {0.0};
  theta.theta3 = {0.0};
  return Game(std::move(net), std::move(cov), std::move(theta),
              ShockDistribution(ShockKind::logistic));
}

bool leq(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

}  // namespace

TEST_CASE("textbook coordination game enumerates both equilibria") {
  Game game = coordination_game();
  NashSet set = enumerate_nash(game, Allocation::none(2), {0.0, 0.0});
  REQUIRE(set.equilibria.size() == 2);
  CHECK(set.least == std::vector<std::uint8_t>{0, 0});
  CHECK(set.greatest == std::vector<std::uint8_t>{1, 1});
}

TEST_CASE("beta zero gives the unique dominant-choice equilibrium") {
  Game game = beta_zero_game(5, 0.3);
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> eps(5);
    for (double& e : eps) e = game.shock().quantile(rng.next_open_double());
    NashSet set = enumerate_nash(game, Allocation::none(5), eps);
    REQUIRE(set.equilibria.size() == 1);
    for (int i = 0; i < 5; ++i)
      CHECK(set.equilibria[0][i] == (0.3 >= eps[i] ? 1 : 0));
  }
}

TEST_CASE("every enumerated equilibrium is sandwiched by the extremes") {
  for (std::uint64_t seed = 40; seed < 52; ++seed) {
    Game game = testing::random_supermodular_game(seed, {.n = 8});
    Rng rng(seed * 31 + 1);
    for (int draw = 0; draw < 25; ++draw) {
      std::vector<double> eps(game.size());
      for (double& e : eps) e = game.shock().quantile(rng.next_open_double());
      NashSet set = enumerate_nash(game, Allocation::none(game.size()), eps);
      REQUIRE_FALSE(set.equilibria.empty());
      for (const auto& y : set.equilibria) {
        CHECK(leq(set.least, y));
        CHECK(leq(y, set.greatest));
      }
      // Extremes are themselves members.
      CHECK(std::find(set.equilibria.begin(), set.equilibria.end(), set.least) !=
            set.equilibria.end());
      CHECK(std::find(set.equilibria.begin(), set.equilibria.end(), set.greatest) !=
            set.equilibria.end());
    }
  }
}

TEST_CASE("best-response extremes match the coordination game") {
  Game game = coordination_game();
  auto [least, greatest] = extremal_nash_br(game, Allocation::none(2), {0.0, 0.0});
  CHECK(least == std::vector<std::uint8_t>{0, 0});
  CHECK(greatest == std::vector<std::uint8_t>{1, 1});
}

TEST_CASE("best-response extremes collapse when beta is zero") {
  Game game = beta_zero_game(6, -0.2);
  Rng rng(5);
  std::vector<double> eps(6);
  for (double& e : eps) e = game.shock().quantile(rng.next_open_double());
  auto [least, greatest] = extremal_nash_br(game, Allocation::none(6), eps);
  CHECK(least == greatest);
}

TEST_CASE("best-response extremes equal enumeration extremes on random draws") {
  for (std::uint64_t seed = 60; seed < 72; ++seed) {
    int n = 4 + static_cast<int>(seed % 9);  // up to 12 units
    Game game = testing::random_supermodular_game(seed, {.n = n});
    Allocation alloc = Allocation::from_treated(n, {0}, 1);
    Rng rng(seed * 17 + 3);
    for (int draw = 0; draw < 20; ++draw) {
      std::vector<double> eps(n);
      for (double& e : eps) e = game.shock().quantile(rng.next_open_double());
      NashSet set = enumerate_nash(game, alloc, eps);
      auto [least, greatest] = extremal_nash_br(game, alloc, eps);
      CHECK(least == set.least);
      CHECK(greatest == set.greatest);
    }
  }
}

TEST_CASE("extremal best response requires supermodularity") {
  Network net(2, {{0, 1}}, false);
  Covariates cov(2, 1, {0.0, 0.0});
  Theta theta;
  theta.theta2 = {0.0};
  theta.theta3 = {0.0};
  theta.theta5 = -1.0;
  Game game(std::move(net), std::move(cov), std::move(theta),
            ShockDistribution(ShockKind::logistic));
  CHECK_THROWS_AS(extremal_nash_br(game, Allocation::none(2), {0.0, 0.0}),
                  SupermodularityViolation);
}

TEST_CASE("enumeration budget is enforced") {
  Game game = testing::random_supermodular_game(99, {.n = 17, .edge_probability = 0.1});
  std::vector<double> eps(17, 0.0);
  CHECK_THROWS_AS(enumerate_nash(game, Allocation::none(17), eps), BudgetExceeded);
}

TEST_CASE("probability bounds collapse to F(alpha) when beta is zero") {
  Game game = beta_zero_game(4, 0.4);
  UnitBounds bounds = bound_probabilities_mc(game, Allocation::none(4), 20000, 7);
  double expected = game.shock().cdf(0.4);
  for (int i = 0; i < 4; ++i) {
    CHECK(bounds.lower[i] == doctest::Approx(bounds.upper[i]));
    // Monte Carlo error at 20000 draws: 3 sigma is about 0.011.
    CHECK(std::abs(bounds.upper[i] - expected) <= 0.011);
  }
}

TEST_CASE("per-draw complement identity holds exactly") {
  // lower-event(i) = every equilibrium plays 1 = complement of
  // some-equilibrium-plays-0; verified on the enumerated set draw by draw.
  Game game = testing::random_supermodular_game(123, {.n = 7, .theta5_max = 2.5});
  Rng rng(55);
  for (int draw = 0; draw < 200; ++draw) {
    std::vector<double> eps(7);
    for (double& e : eps) e = game.shock().quantile(rng.next_open_double());
    NashSet set = enumerate_nash(game, Allocation::none(7), eps);
    for (int i = 0; i < 7; ++i) {
      bool all_play_one = true;
      bool some_play_zero = false;
      for (const auto& y : set.equilibria) {
        all_play_one = all_play_one && y[i] == 1;
        some_play_zero = some_play_zero || y[i] == 0;
      }
      CHECK(all_play_one == !some_play_zero);
      // The lattice shortcut: those events are readable off the least profile.
      CHECK(all_play_one == (set.least[i] == 1));
    }
  }
}

TEST_CASE("aggregation equality holds as exact integer equality per draw") {
  // min over equilibria of sum_i y_i equals sum_i min over equilibria y_i,
  // and the max version likewise, because the extremes are members.
  for (std::uint64_t seed = 80; seed < 90; ++seed) {
    Game game = testing::random_supermodular_game(seed, {.n = 8, .theta5_max = 2.0});
    Rng rng(seed + 7);
    for (int draw = 0; draw < 50; ++draw) {
      std::vector<double> eps(8);
      for (double& e : eps) e = game.shock().quantile(rng.next_open_double());
      NashSet set = enumerate_nash(game, Allocation::none(8), eps);

      int min_sum = 1 << 20;
      int max_sum = -1;
      for (const auto& y : set.equilibria) {
        int s = 0;
        for (auto v : y) s += v;
        min_sum = std::min(min_sum, s);
        max_sum = std::max(max_sum, s);
      }
      int sum_min = 0;
      int sum_max = 0;
      for (int i = 0; i < 8; ++i) {
        int lo = 1;
        int hi = 0;
        for (const auto& y : set.equilibria) {
          lo = std::min<int>(lo, y[i]);
          hi = std::max<int>(hi, y[i]);
        }
        sum_min += lo;
        sum_max += hi;
      }
      CHECK(min_sum == sum_min);
      CHECK(max_sum == sum_max);
    }
  }
}

TEST_CASE("coordination-prone parameters separate the bounds") {
  Game game = testing::two_unit_symmetric_game();
  UnitBounds bounds = bound_probabilities_mc(game, Allocation::none(2), 5000, 11);
  for (int i = 0; i < 2; ++i) {
    CHECK(bounds.upper[i] - bounds.lower[i] > 0.05);
    CHECK(bounds.lower[i] >= 0.0);
    CHECK(bounds.upper[i] <= 1.0);
  }
}

TEST_CASE("probability bounds are deterministic and thread-invariant") {
  Game game = testing::random_supermodular_game(321, {.n = 6});
  UnitBounds a = bound_probabilities_mc(game, Allocation::none(6), 500, 13, 1);
  UnitBounds b = bound_probabilities_mc(game, Allocation::none(6), 500, 13, 4);
  CHECK(a.lower == b.lower);
  CHECK(a.upper == b.upper);
}

TEST_CASE("raising every alpha never lowers the extremes") {
  // Treatment with positive effects is a uniform upward shift; monotone
  // comparative statics on the realized game.
  for (std::uint64_t seed = 500; seed < 508; ++seed) {
    Game game = testing::random_supermodular_game(
        seed, {.n = 7, .positive_treatment_effects = true});
    Allocation none = Allocation::none(7);
    Allocation treated = Allocation::from_treated(7, {0, 1, 2, 3, 4, 5, 6}, 7);
    Rng rng(seed + 1);
    for (int draw = 0; draw < 20; ++draw) {
      std::vector<double> eps(7);
      for (double& e : eps) e = game.shock().quantile(rng.next_open_double());
      auto [lo_base, hi_base] = extremal_nash_br(game, none, eps);
      auto [lo_up, hi_up] = extremal_nash_br(game, treated, eps);
      CHECK(leq(lo_base, lo_up));
      CHECK(leq(hi_base, hi_up));
    }
  }
}
