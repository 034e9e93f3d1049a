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
#include "netgame/equilibrium.hpp"
#include "netgame/rng.hpp"
#include "test_support.hpp"

using namespace netgame;

// Frozen from the bisection oracle below (also confirmed by long-double
// Newton and direct iteration).
constexpr double kTwoUnitLeast = 0.07072018167994482;

namespace {

Game no_interaction_game() {
  // Three units, beta = 0, heterogeneous alpha via covariates.
  Network net(3, {{0, 1}, {1, 2}}, false);
  Covariates cov(3, 1, {0.0, 1.0, 2.0});
  Theta theta;
  theta.theta0 = -0.5;
  theta.theta2 = {0.7};
  theta.theta3 = {0.0};
  return Game(std::move(net), std::move(cov), std::move(theta),
              ShockDistribution(ShockKind::logistic));
}

}  // namespace

TEST_CASE("ccp_map single unit at zero index") {
  Network net(1, {}, false);
  Covariates cov(1, 1, {0.0});
  Theta theta;
  theta.theta2 = {0.0};
  theta.theta3 = {0.0};
  Game game(std::move(net), std::move(cov), std::move(theta),
            ShockDistribution(ShockKind::logistic));
  for (double s : {0.0, 0.3, 1.0}) {
    CcpProfile out = ccp_map(CcpProfile::constant(1, s), game, Allocation::none(1));
    CHECK(out.sigma[0] == doctest::Approx(0.5));
  }
}

TEST_CASE("ccp_map with beta zero ignores sigma") {
  Game game = no_interaction_game();
  Allocation none = Allocation::none(3);
  CcpProfile at_zero = ccp_map(CcpProfile::constant(3, 0.0), game, none);
  CcpProfile at_one = ccp_map(CcpProfile::constant(3, 1.0), game, none);
  for (int i = 0; i < 3; ++i) {
    double expected = game.shock().cdf(alpha(i, game, none));
    CHECK(at_zero.sigma[i] == doctest::Approx(expected));
    CHECK(at_one.sigma[i] == doctest::Approx(expected));
  }
}

TEST_CASE("ccp_map fixed point at one half") {
  Game game = testing::two_unit_symmetric_game();
  CcpProfile half = CcpProfile::constant(2, 0.5);
  CcpProfile out = ccp_map(half, game, Allocation::none(2));
  CHECK(out.sigma[0] == doctest::Approx(0.5));
  CHECK(out.sigma[1] == doctest::Approx(0.5));
}

TEST_CASE("solve_least with beta zero converges in two iterations") {
  Game game = no_interaction_game();
  FixedPointReport report = solve_least(game, Allocation::none(3));
  CHECK(report.converged);
  CHECK(report.iterations <= 2);
  for (int i = 0; i < 3; ++i) {
    double expected = game.shock().cdf(alpha(i, game, Allocation::none(3)));
    CHECK(report.profile.sigma[i] == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("two-unit least equilibrium matches the bisection oracle") {
  Game game = testing::two_unit_symmetric_game();
  double oracle =
      testing::bisect_symmetric_fixed_point(game.shock(), -3.0, 6.0, 0.0, 0.4);
  CHECK(oracle == doctest::Approx(kTwoUnitLeast).epsilon(1e-12));

  FixedPointReport least = solve_least(game, Allocation::none(2));
  CHECK(least.converged);
  CHECK(least.monotone_nondecreasing);
  for (double s : least.profile.sigma) CHECK(std::abs(s - oracle) <= 1e-6);
}

TEST_CASE("two-unit greatest equals one minus least by logistic symmetry") {
  Game game = testing::two_unit_symmetric_game();
  FixedPointReport least = solve_least(game, Allocation::none(2));
  FixedPointReport greatest = solve_greatest(game, Allocation::none(2));
  CHECK(greatest.converged);
  CHECK(greatest.monotone_nonincreasing);
  for (int i = 0; i < 2; ++i)
    CHECK(std::abs(greatest.profile.sigma[i] - (1.0 - least.profile.sigma[i])) <= 1e-10);
}

TEST_CASE("monotone trajectories and ordering on random supermodular games") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    Game game = testing::random_supermodular_game(seed);
    Allocation none = Allocation::none(game.size());
    FixedPointReport least = solve_least(game, none);
    FixedPointReport greatest = solve_greatest(game, none);
    CHECK(least.converged);
    CHECK(greatest.converged);
    CHECK(least.monotone_nondecreasing);
    CHECK(greatest.monotone_nonincreasing);
    for (int i = 0; i < game.size(); ++i)
      CHECK(least.profile.sigma[i] <= greatest.profile.sigma[i] + 1e-9);
  }
}

TEST_CASE("beta zero gives a unique equilibrium") {
  Game game = no_interaction_game();
  Allocation none = Allocation::none(3);
  FixedPointReport least = solve_least(game, none);
  FixedPointReport greatest = solve_greatest(game, none);
  for (int i = 0; i < 3; ++i)
    CHECK(std::abs(least.profile.sigma[i] - greatest.profile.sigma[i]) <= 1e-12);
}

TEST_CASE("residual cases") {
  Game game = testing::two_unit_symmetric_game();
  Allocation none = Allocation::none(2);

  // Exact fixed point: 0.5 maps to itself.
  CHECK(residual(CcpProfile::constant(2, 0.5), game, none) <= 1e-12);

  // sigma = 0 with alpha = 0: residual is F(0) = 0.5.
  Network net(1, {}, false);
  Covariates cov(1, 1, {0.0});
  Theta theta;
  theta.theta2 = {0.0};
  theta.theta3 = {0.0};
  Game zero_alpha(std::move(net), std::move(cov), std::move(theta),
                  ShockDistribution(ShockKind::logistic));
  CHECK(residual(CcpProfile::constant(1, 0.0), zero_alpha, Allocation::none(1)) ==
        doctest::Approx(0.5));

  // Solver output is a near-fixed point.
  FixedPointReport least = solve_least(game, none);
  CHECK(residual(least.profile, game, none) <= 1e-6);
}

TEST_CASE("solver reports respect the tolerance contract") {
  Game game = testing::two_unit_symmetric_game();
  SolveOptions opts;
  opts.tol = 1e-10;
  FixedPointReport least = solve_least(game, Allocation::none(2), opts);
  CHECK(least.converged);
  CHECK(least.residual <= opts.tol);
  CHECK(residual(least.profile, game, Allocation::none(2)) <= opts.tol);
}

TEST_CASE("sandwich property for random starts") {
  Rng rng(99);
  for (std::uint64_t seed = 30; seed < 36; ++seed) {
    Game game = testing::random_supermodular_game(seed);
    Allocation none = Allocation::none(game.size());
    FixedPointReport least = solve_least(game, none);
    FixedPointReport greatest = solve_greatest(game, none);
    for (int trial = 0; trial < 40; ++trial) {
      CcpProfile start;
      start.sigma.resize(game.size());
      for (double& v : start.sigma) v = rng.next_double();
      FixedPointReport fp = solve_from(game, none, start);
      REQUIRE(fp.converged);
      for (int i = 0; i < game.size(); ++i) {
        CHECK(fp.profile.sigma[i] >= least.profile.sigma[i] - 1e-8);
        CHECK(fp.profile.sigma[i] <= greatest.profile.sigma[i] + 1e-8);
      }
    }
  }
}

TEST_CASE("supermodularity violation is rejected") {
  Network net(2, {{0, 1}}, false);
  Covariates cov(2, 1, {0.0, 0.0});
  Theta theta;
  theta.theta2 = {0.0};
  theta.theta3 = {0.0};
  theta.theta5 = -0.5;
  Game game(std::move(net), std::move(cov), std::move(theta),
            ShockDistribution(ShockKind::logistic));
  CHECK_THROWS_AS(solve_least(game, Allocation::none(2)), SupermodularityViolation);
  CHECK_THROWS_AS(solve_greatest(game, Allocation::none(2)), SupermodularityViolation);
}

TEST_CASE("non-convergence is reported, not thrown") {
  Game game = testing::two_unit_symmetric_game();
  SolveOptions opts;
  opts.max_iter = 2;
  FixedPointReport report = solve_least(game, Allocation::none(2), opts);
  CHECK_FALSE(report.converged);
  CHECK(report.iterations == 2);
  CHECK(report.residual > opts.tol);
}

TEST_CASE("gaussian shocks solve with the same guarantees") {
  Game base = testing::random_supermodular_game(414, {.n = 10, .shock = ShockKind::gaussian});
  Allocation none = Allocation::none(10);
  FixedPointReport least = solve_least(base, none);
  FixedPointReport greatest = solve_greatest(base, none);
  CHECK(least.converged);
  CHECK(greatest.converged);
  CHECK(least.monotone_nondecreasing);
  CHECK(greatest.monotone_nonincreasing);
  for (int i = 0; i < 10; ++i)
    CHECK(least.profile.sigma[i] <= greatest.profile.sigma[i] + 1e-9);
  CHECK(residual(least.profile, base, none) <= 1e-10);
}

TEST_CASE("directed spillovers use the out-neighborhood") {
  // 0 -> 1: unit 0's payoff depends on unit 1, not the reverse.
  Network net(2, {{0, 1}}, true);
  Covariates cov(2, 1, {0.0, 0.0});
  Theta theta;
  theta.theta0 = -1.0;
  theta.theta2 = {0.0};
  theta.theta3 = {0.0};
  theta.theta5 = 2.0;
  Game game(std::move(net), std::move(cov), std::move(theta),
            ShockDistribution(ShockKind::logistic));
  Allocation none = Allocation::none(2);
  CHECK(beta(0, 1, game, none) == doctest::Approx(2.0));
  CHECK(beta(1, 0, game, none) == doctest::Approx(0.0));

  // Unit 1 has no incoming spillover, so sigma_1 = F(-1) exactly and unit 0
  // best-responds to it: sigma_0 = F(-1 + 2 F(-1)).
  FixedPointReport least = solve_least(game, none);
  double s1 = game.shock().cdf(-1.0);
  CHECK(least.profile.sigma[1] == doctest::Approx(s1).epsilon(1e-12));
  CHECK(least.profile.sigma[0] ==
        doctest::Approx(game.shock().cdf(-1.0 + 2.0 * s1)).epsilon(1e-10));
  FixedPointReport greatest = solve_greatest(game, none);
  for (int i = 0; i < 2; ++i)
    CHECK(std::abs(least.profile.sigma[i] - greatest.profile.sigma[i]) <= 1e-9);
}

TEST_CASE("threaded map application matches serial exactly") {
  Game game = testing::random_supermodular_game(77, {.n = 40});
  Allocation none = Allocation::none(game.size());
  SolveOptions serial;
  SolveOptions threaded;
  threaded.threads = 4;
  FixedPointReport a = solve_least(game, none, serial);
  FixedPointReport b = solve_least(game, none, threaded);
  REQUIRE(a.profile.size() == b.profile.size());
  for (int i = 0; i < a.profile.size(); ++i)
    CHECK(a.profile.sigma[i] == b.profile.sigma[i]);
  CHECK(a.iterations == b.iterations);
}
