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
#include <cmath>

#include "doctest.h"
#include "netgame/rng.hpp"
#include "netgame/welfare.hpp"
#include "test_support.hpp"

using namespace netgame;

namespace {

Game uniform_alpha_game(double theta0, int n = 4) {
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

}  // namespace

TEST_CASE("engagement welfare is the mean probability") {
  CHECK(engagement_welfare(CcpProfile::constant(5, 0.0)) == doctest::Approx(0.0));
  CcpProfile profile{{0.2, 0.4, 0.6}};
  CHECK(engagement_welfare(profile) == doctest::Approx(0.4));
}

TEST_CASE("engagement welfare of the two-unit least profile") {
  Game game = testing::two_unit_symmetric_game();
  double oracle = testing::bisect_symmetric_fixed_point(game.shock(), -3.0, 6.0, 0.0, 0.4);
  FixedPointReport least = solve_least(game, Allocation::none(2));
  CHECK(engagement_welfare(least.profile) == doctest::Approx(oracle).epsilon(1e-6));
}

TEST_CASE("engagement welfare is monotone in the profile") {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    CcpProfile low;
    CcpProfile high;
    low.sigma.resize(6);
    high.sigma.resize(6);
    for (int i = 0; i < 6; ++i) {
      low.sigma[i] = rng.next_double();
      high.sigma[i] = low.sigma[i] + (1.0 - low.sigma[i]) * rng.next_double();
    }
    CHECK(engagement_welfare(high) >= engagement_welfare(low) - 1e-15);
  }
}

TEST_CASE("utilitarian welfare with beta zero and alpha one") {
  Game game = uniform_alpha_game(1.0);
  // theta5 = 0 so the quadratic term vanishes; W = alpha * F(alpha).
  Allocation none = Allocation::none(game.size());
  FixedPointReport least = solve_least(game, none);
  double w = utilitarian_welfare(least.profile, game, none);
  CHECK(w == doctest::Approx(game.shock().cdf(1.0)).epsilon(1e-9));
}

TEST_CASE("utilitarian welfare at the zero profile is zero") {
  Game game = testing::two_unit_symmetric_game();
  std::string warning;
  double w = utilitarian_welfare(CcpProfile::constant(2, 0.0), game, Allocation::none(2),
                                 &warning);
  CHECK(w == doctest::Approx(0.0));
  // sigma = 0 is not an equilibrium of this game, so the warning fires.
  CHECK_FALSE(warning.empty());
}

TEST_CASE("utilitarian welfare matches a direct two-unit formula") {
  Game game = testing::two_unit_symmetric_game();
  Allocation none = Allocation::none(2);
  FixedPointReport greatest = solve_greatest(game, none);
  double s = greatest.profile.sigma[0];
  double direct = 0.5 * (2.0 * (-3.0) * s + 2.0 * 6.0 * s * s);
  std::string warning;
  double w = utilitarian_welfare(greatest.profile, game, none, &warning);
  CHECK(w == doctest::Approx(direct).epsilon(1e-9));
  CHECK(warning.empty());
}

TEST_CASE("engagement bounds collapse when beta is zero") {
  Game game = uniform_alpha_game(0.3);
  WelfareBounds bounds = engagement_bounds(game, Allocation::none(game.size()));
  CHECK(std::abs(bounds.upper - bounds.lower) <= 1e-12);
}

TEST_CASE("two-unit engagement bounds bracket the oracle values") {
  Game game = testing::two_unit_symmetric_game();
  double oracle = testing::bisect_symmetric_fixed_point(game.shock(), -3.0, 6.0, 0.0, 0.4);
  WelfareBounds bounds = engagement_bounds(game, Allocation::none(2));
  CHECK(bounds.lower == doctest::Approx(oracle).epsilon(1e-6));
  CHECK(bounds.upper == doctest::Approx(1.0 - oracle).epsilon(1e-6));
  CHECK(bounds.lower <= bounds.upper + 1e-12);
}

TEST_CASE("random-start fixed points stay inside the engagement interval") {
  Rng rng(123);
  for (std::uint64_t seed = 50; seed < 54; ++seed) {
    Game game = testing::random_supermodular_game(seed);
    Allocation none = Allocation::none(game.size());
    WelfareBounds bounds = engagement_bounds(game, none);
    for (int trial = 0; trial < 25; ++trial) {
      CcpProfile start;
      start.sigma.resize(game.size());
      for (double& v : start.sigma) v = rng.next_double();
      FixedPointReport fp = solve_from(game, none, start);
      REQUIRE(fp.converged);
      double w = engagement_welfare(fp.profile);
      CHECK(w >= bounds.lower - 1e-8);
      CHECK(w <= bounds.upper + 1e-8);
    }
  }
}

TEST_CASE("utilitarian bounds collapse when beta is zero") {
  Game game = uniform_alpha_game(0.7);
  Allocation none = Allocation::none(game.size());
  WelfareBounds bounds = utilitarian_bounds(game, none);
  CHECK(std::abs(bounds.upper - bounds.lower) <= 1e-10);
  // Point value equals (1/N) sum alpha F(alpha) with identical units.
  CHECK(bounds.lower == doctest::Approx(0.7 * game.shock().cdf(0.7)).epsilon(1e-9));
}

TEST_CASE("utilitarian lower bound uses the least profile when all alpha positive") {
  // Positive alpha everywhere: the case split picks the least profile for
  // every unit, so the lower bound is the plain plug-in at the least profile.
  Network net(3, {{0, 1}, {1, 2}}, false);
  Covariates cov(3, 1, {0.0, 0.0, 0.0});
  Theta theta;
  theta.theta0 = 0.8;
  theta.theta2 = {0.0};
  theta.theta3 = {0.0};
  theta.theta5 = 0.5;
  Game game(std::move(net), std::move(cov), std::move(theta),
            ShockDistribution(ShockKind::logistic));
  Allocation none = Allocation::none(3);
  WelfareBounds bounds = utilitarian_bounds(game, none);
  double plug_in = utilitarian_welfare(bounds.least_profile, game, none);
  CHECK(bounds.lower == doctest::Approx(plug_in).epsilon(1e-12));
}

TEST_CASE("utilitarian lower bound case split with negative alpha") {
  // alpha = -3 < 0: the first term of the lower bound evaluates at the
  // greatest profile, the quadratic term at the least profile.
  Game game = testing::two_unit_symmetric_game();
  Allocation none = Allocation::none(2);
  WelfareBounds bounds = utilitarian_bounds(game, none);
  double lo = bounds.least_profile.sigma[0];
  double hi = bounds.greatest_profile.sigma[0];
  double expected_lower = 0.5 * (2.0 * (-3.0) * hi + 2.0 * 6.0 * lo * lo);
  double expected_upper = 0.5 * (2.0 * (-3.0) * lo + 2.0 * 6.0 * hi * hi);
  CHECK(bounds.lower == doctest::Approx(expected_lower).epsilon(1e-10));
  CHECK(bounds.upper == doctest::Approx(expected_upper).epsilon(1e-10));
  CHECK(bounds.lower <= bounds.upper + 1e-12);
}

TEST_CASE("strict corollary variant is reported on request") {
  Game game = testing::two_unit_symmetric_game();
  Allocation none = Allocation::none(2);
  WelfareBounds bounds = utilitarian_bounds(game, none, {}, /*strict_corollary=*/true);
  REQUIRE(bounds.literal_upper.has_value());
  double lo = bounds.least_profile.sigma[0];
  double hi = bounds.greatest_profile.sigma[0];
  // Literal text keeps the lower bound's first term with the upper's
  // quadratic term.
  double literal = 0.5 * (2.0 * (-3.0) * hi + 2.0 * 6.0 * hi * hi);
  CHECK(*bounds.literal_upper == doctest::Approx(literal).epsilon(1e-10));
  CHECK(lo < hi);
}

TEST_CASE("mirrored upper bound dominates the lower across random games") {
  for (std::uint64_t seed = 200; seed < 212; ++seed) {
    Game game = testing::random_supermodular_game(seed);
    Allocation alloc = Allocation::from_treated(game.size(), {0, 2}, 2);
    WelfareBounds bounds = utilitarian_bounds(game, alloc);
    CHECK(bounds.lower <= bounds.upper + 1e-12);
  }
}
