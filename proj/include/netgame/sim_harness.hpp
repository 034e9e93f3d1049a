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

#ifndef NETGAME_SIM_HARNESS_HPP_
#define NETGAME_SIM_HARNESS_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "netgame/allocation.hpp"
#include "netgame/estimation.hpp"
#include "netgame/game.hpp"

namespace netgame {

enum class NetworkGenerator { erdos_renyi, ring, path, from_file };

enum class SelectionRule { least, greatest, iterate_from_random };

SelectionRule selection_from_string(const std::string& name);
std::string to_string(SelectionRule rule);

// Synthetic data-generating process: network law, covariate law, structural
// parameters, shock family, and the equilibrium the data is assumed to come
// from.
struct DgpSpec {
  NetworkGenerator generator = NetworkGenerator::erdos_renyi;
  double edge_probability = 0.1;  // erdos_renyi
  int ring_degree = 2;            // ring: units link to the k/2 nearest on each side
  std::string network_file;       // from_file
  bool network_directed = false;
  int n = 0;
  // Uniform [lo, hi] per covariate column; column count fixes K.
  std::vector<std::pair<double, double>> covariate_ranges;
  Theta theta;
  ShockKind shock = ShockKind::logistic;
  SelectionRule selection = SelectionRule::least;
  std::uint64_t seed = 0;
  // Treated units in generated training panels, assigned at random.
  int train_kappa = 0;
  bool forbid_isolated = false;
};

// Deterministic game draw from the DGP description.
Game generate_game(const DgpSpec& dgp);
Game generate_game(const DgpSpec& dgp, int n_override, std::uint64_t seed_override);

// One play of the game: solve the selected equilibrium CCP profile, draw the
// shocks once, and return y_i = 1{alpha_i + sum_j beta_ij sigma*_j >= eps_i}.
std::vector<std::uint8_t> simulate_play(const Game& game, const Allocation& alloc,
                                        SelectionRule selection, std::uint64_t seed,
                                        const SolveOptions& solve = {});

// Training panel drawn from the DGP: random treatment assignment of
// train_kappa units, equilibrium play, plus the true CCP profile behind it.
struct TrainingDraw {
  ObservedPanel panel;
  CcpProfile true_sigma;
  Allocation allocation;
};
TrainingDraw make_training_panel(const DgpSpec& dgp, int n, std::uint64_t seed,
                                 const SolveOptions& solve = {});

struct RegretRow {
  int n_train = 0;
  int rep = 0;
  double regret = 0.0;
  double estimation_gap = 0.0;  // max_D |W_n(D) - W(D)| over the feasible set
  double greedy_gap = 0.0;      // W_n(D_tilde) - W_n(D_greedy)
};

struct RegretSummary {
  std::vector<RegretRow> rows;
  double mean_regret = 0.0;
  double median_regret = 0.0;
  double max_regret = 0.0;
  double optimum_welfare = 0.0;  // W(D*) at the true parameters
};

struct RegretOptions {
  FirstStage first_stage = FirstStage::flexible_logit;
  FirstStageConfig first_stage_config;
  OptimizerConfig optimizer;
  AllocOptions alloc;
  int threads = 1;
  // Replaces theta_hat with a fixed value (estimation-error-free baseline).
  std::optional<Theta> force_theta_hat;
  // Project estimated spillover parameters onto {theta5 >= 0,
  // theta5 + theta6 >= 0} so the maximin problem stays well posed when
  // sampling noise pushes them negative.
  bool project_supermodular = true;
};

// Per rep: draw a training panel of size n_train, fit the two-step MLE,
// greedily allocate on the target game with the estimates, and score the
// welfare shortfall against the exhaustive optimum at the true parameters.
RegretSummary evaluate_regret(const DgpSpec& dgp, int n_train, const Game& target_game,
                              int kappa, int reps, std::uint64_t seed,
                              const RegretOptions& opts = {});

struct DiagnosticReport {
  double gamma_hat = 1.0;  // submodularity ratio
  double xi_hat = 0.0;     // curvature
  double guarantee_factor = 1.0;  // (1/xi)(1 - exp(-xi * gamma))
  int n = 0;
};

// (1/xi)(1 - e^{-xi*gamma}) with the xi -> 0 limit handled.
double greedy_guarantee_factor(double xi, double gamma);

// Exact submodularity ratio and curvature of a set function over subsets of
// {0, ..., n-1} with at most max_subset_size elements, by enumeration:
//   gamma_hat = min over S, T (T nonempty, disjoint from S) of
//               sum_{k in T} [f(S+k) - f(S)] / [f(S+T) - f(S)],
//   xi_hat    = max over S subset R, k outside R of
//               1 - [f(R+k) - f(R)] / [f(S+k) - f(S)],
// skipping pairs whose denominator is below 1e-8 in magnitude.
DiagnosticReport diagnostics_from_set_function(
    const std::function<double(std::uint32_t)>& f, int n, int max_subset_size);

// Diagnostics of the worst-case welfare as a set function of the treated
// set. Enumeration over all subsets; requires N <= 12.
DiagnosticReport estimate_submodularity_curvature(const Game& game, int max_subset_size,
                                                  WelfareObjective objective = WelfareObjective::engagement,
                                                  const SolveOptions& solve = {});

}  // namespace netgame

#endif  // NETGAME_SIM_HARNESS_HPP_
