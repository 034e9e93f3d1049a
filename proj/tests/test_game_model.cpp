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
#include <vector>

#include "doctest.h"
#include "netgame/game.hpp"
#include "netgame/rng.hpp"
#include "netgame/shock.hpp"
#include "test_support.hpp"

using namespace netgame;

namespace {

Game make_game(Network net, Covariates cov, Theta theta,
               ShockKind kind = ShockKind::logistic) {
  return Game(std::move(net), std::move(cov), std::move(theta), ShockDistribution(kind));
}

}  // namespace

TEST_CASE("similarity basics") {
  std::vector<double> a{1.0, 2.0};
  std::vector<double> b{1.0, 2.0};
  CHECK(similarity(a, b) == doctest::Approx(1.0));

  std::vector<double> c{2.0};
  std::vector<double> d{0.0};
  CHECK(similarity(c, d) == doctest::Approx(1.0 / 3.0));

  std::vector<double> e{1.0, 1.0};
  std::vector<double> f{0.0, 0.0};
  CHECK(similarity(e, f) == doctest::Approx(1.0 / 3.0));

  CHECK_THROWS_AS(similarity(a, c), DimensionMismatch);
}

TEST_CASE("similarity is symmetric and bounded") {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> a(3), b(3);
    for (double& v : a) v = 5.0 * rng.next_double();
    for (double& v : b) v = 5.0 * rng.next_double();
    double s_ab = similarity(a, b);
    double s_ba = similarity(b, a);
    CHECK(s_ab == s_ba);
    CHECK(s_ab > 0.0);
    CHECK(s_ab <= 1.0);
    if (a != b) CHECK(s_ab < 1.0);
  }
}

TEST_CASE("alpha intercept only") {
  Network net(3, {{0, 1}, {1, 2}}, false);
  Covariates cov(3, 1, {0.5, 1.0, 1.5});
  Theta theta;
  theta.theta0 = 1.0;
  theta.theta2 = {0.0};
  theta.theta3 = {0.0};
  Game game = make_game(std::move(net), std::move(cov), std::move(theta));
  Allocation all_treated = Allocation::from_treated(3, {0, 1, 2}, 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(alpha(i, game, Allocation::none(3)) == doctest::Approx(1.0));
    CHECK(alpha(i, game, all_treated) == doctest::Approx(1.0));
  }
}

TEST_CASE("alpha spillover term vanishes for isolated units") {
  Network net(2, {}, false);
  Covariates cov(2, 1, {1.0, 1.0});
  Theta theta;
  theta.theta0 = 0.25;
  theta.theta2 = {0.0};
  theta.theta3 = {0.0};
  theta.theta4 = 5.0;
  Game game = make_game(std::move(net), std::move(cov), std::move(theta));
  Allocation alloc = Allocation::from_treated(2, {1}, 1);
  CHECK(alpha(0, game, alloc) == doctest::Approx(0.25));
}

TEST_CASE("alpha direct substitution") {
  // theta0=-1, theta1=2, D_i=1, theta4=0.5, one treated neighbor with m=1.
  Network net(2, {{0, 1}}, false);
  Covariates cov(2, 1, {0.0, 0.0});
  Theta theta;
  theta.theta0 = -1.0;
  theta.theta1 = 2.0;
  theta.theta2 = {0.0};
  theta.theta3 = {0.0};
  theta.theta4 = 0.5;
  Game game = make_game(std::move(net), std::move(cov), std::move(theta));
  Allocation alloc = Allocation::from_treated(2, {0, 1}, 2);
  CHECK(alpha(0, game, alloc) == doctest::Approx(1.5));
}

TEST_CASE("beta cases") {
  // Unit 0 has two neighbors; identical covariates give m = 1.
  Network net(3, {{0, 1}, {0, 2}}, false);
  Covariates cov(3, 1, {1.0, 1.0, 1.0});
  Theta theta;
  theta.theta2 = {0.0};
  theta.theta3 = {0.0};
  theta.theta5 = 0.5;
  theta.theta6 = 0.2;
  Game game = make_game(std::move(net), std::move(cov), std::move(theta));

  Allocation both = Allocation::from_treated(3, {0, 1}, 3);
  CHECK(beta(0, 1, game, both) == doctest::Approx(0.35));  // (0.5 + 0.2) / 2
  CHECK(beta(1, 2, game, both) == doctest::Approx(0.0));   // no link
  CHECK_THROWS_AS(beta(1, 1, game, both), ValidationError);
}

TEST_CASE("beta can flip negative and check_supermodular reports it") {
  Network net(2, {{0, 1}}, false);
  Covariates cov(2, 1, {0.0, 0.0});
  Theta theta;
  theta.theta2 = {0.0};
  theta.theta3 = {0.0};
  theta.theta5 = 0.5;
  theta.theta6 = -0.6;
  Game game = make_game(std::move(net), std::move(cov), std::move(theta));

  Allocation both = Allocation::from_treated(2, {0, 1}, 2);
  CHECK(beta(0, 1, game, both) == doctest::Approx(-0.1));
  CHECK_FALSE(game.supermodular_for_all_allocations());

  auto report = check_supermodular(game, both);
  CHECK_FALSE(report.pass);
  CHECK(report.violations.size() == 2);  // both ordered pairs
  CHECK(report.violations[0].beta == doctest::Approx(-0.1));

  // Untreated pairs keep beta = theta5 >= 0.
  CHECK(check_supermodular(game, Allocation::none(2)).pass);
}

TEST_CASE("check_supermodular passes for nonnegative spillovers") {
  Game game = testing::random_supermodular_game(11);
  CHECK(check_supermodular(game, Allocation::none(game.size())).pass);
  CHECK(game.supermodular_for_all_allocations());

  Theta degenerate;
  degenerate.theta2 = {0.0};
  degenerate.theta3 = {0.0};
  Network net(2, {{0, 1}}, false);
  Covariates cov(2, 1, {0.0, 0.0});
  Game zero = make_game(std::move(net), std::move(cov), std::move(degenerate));
  CHECK(check_supermodular(zero, Allocation::none(2)).pass);
}

TEST_CASE("alpha and beta are bit-identical across repeated calls") {
  Game game = testing::random_supermodular_game(23);
  Allocation alloc = Allocation::from_treated(game.size(), {0, 3}, 2);
  for (int i = 0; i < game.size(); ++i) {
    double first = alpha(i, game, alloc);
    for (int rep = 0; rep < 3; ++rep) CHECK(alpha(i, game, alloc) == first);
  }
  double b01 = beta(0, 1, game, alloc);
  CHECK(beta(0, 1, game, alloc) == b01);
}

TEST_CASE("network invariants") {
  CHECK_THROWS_AS(Network(2, {{0, 0}}, false), ValidationError);
  CHECK_THROWS_AS(Network(2, {{0, 5}}, false), ValidationError);
  CHECK_THROWS_AS(Network::from_dense({{0, 2}, {2, 0}}, false), ValidationError);
  CHECK_THROWS_AS(Network::from_dense({{0, 1}, {0, 0}}, false), ValidationError);

  Network undirected(3, {{0, 1}}, false);
  CHECK(undirected.has_edge(0, 1));
  CHECK(undirected.has_edge(1, 0));

  Network directed(3, {{0, 1}}, true);
  CHECK(directed.has_edge(0, 1));
  CHECK_FALSE(directed.has_edge(1, 0));
  CHECK(directed.degree(1) == 0);
}

TEST_CASE("covariates must be nonnegative and finite") {
  CHECK_THROWS_AS(Covariates(1, 1, {-0.5}), ValidationError);
  CHECK_THROWS_AS(Covariates(1, 1, {std::nan("")}), ValidationError);
  CHECK_THROWS_AS(Covariates(2, 2, {1.0, 2.0}), DimensionMismatch);
}

TEST_CASE("allocation capacity is enforced") {
  CHECK_THROWS_AS(Allocation::from_treated(3, {0, 1}, 1), ValidationError);
  Allocation ok = Allocation::from_treated(3, {0, 1}, 2);
  CHECK(ok.treated_count() == 2);
}

TEST_CASE("theta dimensions must agree with covariates") {
  Network net(2, {{0, 1}}, false);
  Covariates cov(2, 2, {0.0, 0.0, 0.0, 0.0});
  Theta theta;
  theta.theta2 = {0.0};  // K = 1 against covariate K = 2
  theta.theta3 = {0.0};
  CHECK_THROWS_AS(make_game(std::move(net), std::move(cov), std::move(theta)),
                  DimensionMismatch);
}

TEST_CASE("density bounds") {
  ShockDistribution logistic(ShockKind::logistic);
  ShockDistribution gaussian(ShockKind::gaussian);
  CHECK(logistic.density_bound() == doctest::Approx(0.25));
  CHECK(gaussian.density_bound() == doctest::Approx(1.0 / std::sqrt(2.0 * M_PI)));
  for (double x = -10.0; x <= 10.0; x += 0.01) {
    CHECK(logistic.pdf(x) <= logistic.density_bound() + 1e-15);
    CHECK(gaussian.pdf(x) <= gaussian.density_bound() + 1e-15);
  }
}

TEST_CASE("shape condition holds strictly on the grid") {
  for (ShockKind kind : {ShockKind::logistic, ShockKind::gaussian}) {
    ShockDistribution shock(kind);
    int points = 0;
    for (int step = -1000; step <= 1000; ++step) {
      double x = step * 0.01;
      CAPTURE(x);
      CHECK(shock.shape_condition_holds(x));
      ++points;
    }
    CHECK(points == 2001);
  }
}

TEST_CASE("cdf and quantile round-trip") {
  for (ShockKind kind : {ShockKind::logistic, ShockKind::gaussian}) {
    ShockDistribution shock(kind);
    for (int i = 1; i <= 99; ++i) {
      double p = i / 100.0;
      CHECK(std::abs(shock.cdf(shock.quantile(p)) - p) <= 1e-12);
    }
  }
}

TEST_CASE("cdf complement is accurate in the tails") {
  ShockDistribution gaussian(ShockKind::gaussian);
  // Direct 1 - cdf(10) rounds to zero; the complement must not.
  CHECK(gaussian.cdf_complement(10.0) > 0.0);
  CHECK(gaussian.cdf_complement(10.0) < 1e-20);
  ShockDistribution logistic(ShockKind::logistic);
  CHECK(logistic.cdf_complement(40.0) > 0.0);
}

TEST_CASE("two-unit canonical game wiring") {
  Game game = testing::two_unit_symmetric_game();
  Allocation none = Allocation::none(2);
  CHECK(alpha(0, game, none) == doctest::Approx(-3.0));
  CHECK(beta(0, 1, game, none) == doctest::Approx(6.0));
  CHECK(beta(1, 0, game, none) == doctest::Approx(6.0));
}
