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

#ifndef NETGAME_TESTS_TEST_SUPPORT_HPP_
#define NETGAME_TESTS_TEST_SUPPORT_HPP_

#include <cmath>
#include <vector>

#include "netgame/game.hpp"
#include "netgame/rng.hpp"

namespace netgame::testing {

// Two linked units, X = 0 so m = 1, alpha_i = -3 and beta_ij = 6 under the
// empty allocation. The logistic fixed points of s = F(-3 + 6s) are known.
inline Game two_unit_symmetric_game() {
  Network net(2, {{0, 1}}, /*directed=*/false);
  Covariates cov(2, 1, {0.0, 0.0});
  Theta theta;
  theta.theta0 = -3.0;
  theta.theta2 = {0.0};
  theta.theta3 = {0.0};
  theta.theta5 = 6.0;
  return Game(std::move(net), std::move(cov), std::move(theta),
              ShockDistribution(ShockKind::logistic));
}

// Smallest root of s = F(alpha + beta * s) on [lo, hi] by bisection,
// independent of the solver implementation.
inline double bisect_symmetric_fixed_point(const ShockDistribution& shock, double alpha,
                                           double beta, double lo, double hi) {
  auto g = [&](double s) { return shock.cdf(alpha + beta * s) - s; };
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (g(lo) * g(mid) <= 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

struct RandomGameConfig {
  int n = 8;
  int k = 2;
  double edge_probability = 0.35;
  double alpha_scale = 1.5;  // theta0 drawn in [-alpha_scale, alpha_scale]
  double theta5_max = 1.2;
  bool positive_treatment_effects = false;
  ShockKind shock = ShockKind::logistic;
};

// Random supermodular game: theta5 >= 0, theta6 >= 0, covariates in [0, 1].
inline Game random_supermodular_game(std::uint64_t seed, const RandomGameConfig& cfg = {}) {
  Rng rng(seed);
  Rng net_rng = rng.split(0);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < cfg.n; ++i)
    for (int j = i + 1; j < cfg.n; ++j)
      if (net_rng.next_bernoulli(cfg.edge_probability)) edges.emplace_back(i, j);
  Network net(cfg.n, edges, /*directed=*/false);

  Rng cov_rng = rng.split(1);
  std::vector<double> x(static_cast<std::size_t>(cfg.n) * cfg.k);
  for (double& v : x) v = cov_rng.next_double();
  Covariates cov(cfg.n, cfg.k, std::move(x));

  Rng par_rng = rng.split(2);
  Theta theta;
  theta.theta0 = cfg.alpha_scale * (2.0 * par_rng.next_double() - 1.0);
  theta.theta1 = cfg.positive_treatment_effects ? 0.3 + 0.7 * par_rng.next_double()
                                                : 2.0 * par_rng.next_double() - 1.0;
  theta.theta2.resize(cfg.k);
  theta.theta3.resize(cfg.k);
  for (double& v : theta.theta2) v = par_rng.next_double() - 0.5;
  for (double& v : theta.theta3)
    v = cfg.positive_treatment_effects ? 0.5 * par_rng.next_double()
                                       : par_rng.next_double() - 0.5;
  theta.theta4 = cfg.positive_treatment_effects ? 0.2 + 0.6 * par_rng.next_double()
                                                : 2.0 * par_rng.next_double() - 1.0;
  theta.theta5 = cfg.theta5_max * par_rng.next_double();
  theta.theta6 = 0.5 * par_rng.next_double();
  return Game(std::move(net), std::move(cov), std::move(theta), ShockDistribution(cfg.shock));
}

}  // namespace netgame::testing

#endif  // NETGAME_TESTS_TEST_SUPPORT_HPP_
