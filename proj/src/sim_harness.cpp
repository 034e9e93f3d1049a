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

#include "netgame/sim_harness.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <exception>
#include <limits>

#include "netgame/io.hpp"
#include "netgame/parallel.hpp"
#include "netgame/rng.hpp"

namespace netgame {

SelectionRule selection_from_string(const std::string& name) {
  if (name == "least") return SelectionRule::least;
  if (name == "greatest") return SelectionRule::greatest;
  if (name == "iterate_from_random") return SelectionRule::iterate_from_random;
  throw ValidationError("unknown selection rule: " + name);
}

std::string to_string(SelectionRule rule) {
  switch (rule) {
    case SelectionRule::least: return "least";
    case SelectionRule::greatest: return "greatest";
    case SelectionRule::iterate_from_random: return "iterate_from_random";
  }
  return "unknown";
}

namespace {

Network generate_network(const DgpSpec& dgp, int n, Rng rng) {
  switch (dgp.generator) {
    case NetworkGenerator::erdos_renyi: {
      if (dgp.edge_probability < 0.0 || dgp.edge_probability > 1.0)
        throw ValidationError("edge probability must lie in [0, 1]");
      std::vector<std::pair<int, int>> edges;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (rng.next_bernoulli(dgp.edge_probability)) edges.emplace_back(i, j);
      return Network(n, edges, /*directed=*/false);
    }
    case NetworkGenerator::ring: {
      int k = dgp.ring_degree;
      if (k <= 0 || k % 2 != 0) throw ValidationError("ring degree must be positive and even");
      if (k >= n) throw ValidationError("ring degree must be below the unit count");
      std::vector<std::pair<int, int>> edges;
      for (int i = 0; i < n; ++i)
        for (int step = 1; step <= k / 2; ++step) edges.emplace_back(i, (i + step) % n);
      return Network(n, edges, /*directed=*/false);
    }
    case NetworkGenerator::path: {
      std::vector<std::pair<int, int>> edges;
      for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
      return Network(n, edges, /*directed=*/false);
    }
    case NetworkGenerator::from_file:
      return load_network(dgp.network_file, dgp.network_directed);
  }
  throw ValidationError("unknown network generator");
}

Covariates generate_covariates(const DgpSpec& dgp, int n, Rng rng) {
  int k = static_cast<int>(dgp.covariate_ranges.size());
  std::vector<double> data(static_cast<std::size_t>(n) * k);
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < k; ++c) {
      auto [lo, hi] = dgp.covariate_ranges[c];
      if (lo < 0.0 || hi < lo) throw ValidationError("covariate ranges must satisfy 0 <= lo <= hi");
      data[static_cast<std::size_t>(i) * k + c] = lo + (hi - lo) * rng.next_double();
    }
  return Covariates(n, k, std::move(data));
}

CcpProfile select_equilibrium(const Game& game, const Allocation& alloc, SelectionRule rule,
                              Rng rng, const SolveOptions& solve) {
  switch (rule) {
    case SelectionRule::least:
      return solve_least(game, alloc, solve).profile;
    case SelectionRule::greatest:
      return solve_greatest(game, alloc, solve).profile;
    case SelectionRule::iterate_from_random: {
      CcpProfile start;
      start.sigma.resize(game.size());
      for (double& v : start.sigma) v = rng.next_double();
      return solve_from(game, alloc, start, solve).profile;
    }
  }
  throw ValidationError("unknown selection rule");
}

}  // namespace

Game generate_game(const DgpSpec& dgp, int n_override, std::uint64_t seed_override) {
  int n = n_override;
  if (n <= 0) throw ValidationError("generated game needs a positive unit count");
  Rng master(seed_override);
  Network net = generate_network(dgp, n, master.split(0));
  if (dgp.forbid_isolated)
    for (int i = 0; i < n; ++i)
      if (net.degree(i) == 0)
        throw DegenerateNetwork("generator produced an isolated unit at index " +
                                std::to_string(i));
  Covariates cov = generate_covariates(dgp, n, master.split(1));
  return Game(std::move(net), std::move(cov), dgp.theta, ShockDistribution(dgp.shock));
}

Game generate_game(const DgpSpec& dgp) { return generate_game(dgp, dgp.n, dgp.seed); }

std::vector<std::uint8_t> simulate_play(const Game& game, const Allocation& alloc,
                                        SelectionRule selection, std::uint64_t seed,
                                        const SolveOptions& solve) {
  Rng master(seed);
  CcpProfile sigma = select_equilibrium(game, alloc, selection, master.split(0), solve);
  UtilityTerms terms = build_utility_terms(game, alloc);
  Rng shocks = master.split(1);
  int n = game.size();
  std::vector<std::uint8_t> y(n);
  for (int i = 0; i < n; ++i) {
    double index = terms.alpha[i];
    const auto& betas = terms.beta[i];
    const auto& nbrs = terms.neighbor_ids[i];
    for (std::size_t k = 0; k < betas.size(); ++k) index += betas[k] * sigma.sigma[nbrs[k]];
    double eps = game.shock().quantile(shocks.next_open_double());
    y[i] = index >= eps ? 1 : 0;
  }
  return y;
}

TrainingDraw make_training_panel(const DgpSpec& dgp, int n, std::uint64_t seed,
                                 const SolveOptions& solve) {
  Rng master(seed);
  Game game = generate_game(dgp, n, seed);
  int kappa = std::min(dgp.train_kappa, n);
  std::vector<int> treated = master.split(2).sample_without_replacement(n, kappa);
  Allocation alloc = Allocation::from_treated(n, treated, kappa);

  CcpProfile sigma = select_equilibrium(game, alloc, dgp.selection, master.split(3), solve);
  UtilityTerms terms = build_utility_terms(game, alloc);
  Rng shocks = master.split(4);
  std::vector<std::uint8_t> y(n);
  for (int i = 0; i < n; ++i) {
    double index = terms.alpha[i];
    const auto& betas = terms.beta[i];
    const auto& nbrs = terms.neighbor_ids[i];
    for (std::size_t k = 0; k < betas.size(); ++k) index += betas[k] * sigma.sigma[nbrs[k]];
    double eps = game.shock().quantile(shocks.next_open_double());
    y[i] = index >= eps ? 1 : 0;
  }

  TrainingDraw draw{ObservedPanel{std::move(y), alloc.d, game.covariates(), game.network()},
                    std::move(sigma), std::move(alloc)};
  return draw;
}

double greedy_guarantee_factor(double xi, double gamma) {
  if (std::abs(xi) < 1e-12) return gamma;
  return -std::expm1(-xi * gamma) / xi;
}

DiagnosticReport diagnostics_from_set_function(
    const std::function<double(std::uint32_t)>& f, int n, int max_subset_size) {
  if (n < 0 || n > 20) throw BudgetExceeded("set-function diagnostics support at most 20 units");
  const double kSkipTol = 1e-8;  // denominators below solver noise are uninformative
  std::uint32_t full = (1u << n) - 1u;

  // Cache f on every admissible subset.
  std::vector<double> value(static_cast<std::size_t>(full) + 1,
                            std::numeric_limits<double>::quiet_NaN());
  for (std::uint32_t mask = 0; mask <= full; ++mask)
    if (std::popcount(mask) <= max_subset_size) value[mask] = f(mask);

  bool any_gamma = false;
  bool any_xi = false;
  double gamma = std::numeric_limits<double>::infinity();
  double xi = -std::numeric_limits<double>::infinity();

  for (std::uint32_t s = 0; s <= full; ++s) {
    if (std::isnan(value[s])) continue;
    std::uint32_t complement = full & ~s;

    // gamma: T ranges over nonempty subsets of the complement; R = S + T.
    for (std::uint32_t t = complement; t != 0; t = (t - 1) & complement) {
      std::uint32_t u = s | t;
      if (std::popcount(u) > max_subset_size) continue;
      double denom = value[u] - value[s];
      if (std::abs(denom) <= kSkipTol) continue;
      double num = 0.0;
      for (std::uint32_t rest = t; rest != 0; rest &= rest - 1) {
        std::uint32_t k = rest & (~rest + 1u);
        num += value[s | k] - value[s];
      }
      gamma = std::min(gamma, num / denom);
      any_gamma = true;
    }

    // xi: S subset R (R = S + T with T possibly empty), k outside R.
    for (std::uint32_t t = complement;; t = (t - 1) & complement) {
      std::uint32_t r = s | t;
      if (std::popcount(r) < max_subset_size) {
        std::uint32_t outside = full & ~r;
        for (std::uint32_t rest = outside; rest != 0; rest &= rest - 1) {
          std::uint32_t k = rest & (~rest + 1u);
          if (std::popcount(s | k) > max_subset_size) continue;
          double denom = value[s | k] - value[s];
          if (std::abs(denom) <= kSkipTol) continue;
          double num = value[r | k] - value[r];
          xi = std::max(xi, 1.0 - num / denom);
          any_xi = true;
        }
      }
      if (t == 0) break;
    }
  }

  DiagnosticReport report;
  report.n = n;
  report.gamma_hat = any_gamma ? gamma : 1.0;
  report.xi_hat = any_xi ? xi : 0.0;
  report.guarantee_factor = greedy_guarantee_factor(report.xi_hat, report.gamma_hat);
  return report;
}

DiagnosticReport estimate_submodularity_curvature(const Game& game, int max_subset_size,
                                                  WelfareObjective objective,
                                                  const SolveOptions& solve) {
  int n = game.size();
  if (n > 12)
    throw BudgetExceeded("welfare diagnostics enumerate all subsets; at most 12 units");
  int cap = std::clamp(max_subset_size, 0, n);
  SolveOptions inner = solve;
  auto f = [&](std::uint32_t mask) {
    std::vector<int> treated;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) treated.push_back(i);
    Allocation alloc = Allocation::from_treated(n, treated, n);
    return worst_case_welfare(game, alloc, objective, inner);
  };
  return diagnostics_from_set_function(f, n, cap);
}

RegretSummary evaluate_regret(const DgpSpec& dgp, int n_train, const Game& target_game,
                              int kappa, int reps, std::uint64_t seed,
                              const RegretOptions& opts) {
  if (reps <= 0) throw ValidationError("rep count must be positive");
  if (static_cast<int>(dgp.covariate_ranges.size()) != target_game.covariates().dim())
    throw DimensionMismatch(
        "training DGP and target game must share the covariate dimension");
  AllocOptions alloc_opts = opts.alloc;
  alloc_opts.threads = 1;

  // Feasible set and true worst-case welfare per allocation, fixed across reps.
  std::vector<Allocation> feasible;
  {
    int n = target_game.size();
    std::vector<std::uint8_t> d(n, 0);
    auto recurse = [&](auto&& self, int next, int remaining) -> void {
      feasible.push_back(Allocation{d, kappa});
      if (remaining == 0) return;
      for (int i = next; i < n; ++i) {
        d[i] = 1;
        self(self, i + 1, remaining - 1);
        d[i] = 0;
      }
    };
    recurse(recurse, 0, kappa);
  }
  if (static_cast<std::uint64_t>(feasible.size()) > alloc_opts.budget)
    throw BudgetExceeded("target feasible set exceeds the evaluation budget");

  std::vector<double> true_welfare(feasible.size());
  for (std::size_t a = 0; a < feasible.size(); ++a)
    true_welfare[a] =
        worst_case_welfare(target_game, feasible[a], alloc_opts.objective, alloc_opts.solve);
  double optimum = *std::max_element(true_welfare.begin(), true_welfare.end());

  RegretSummary summary;
  summary.optimum_welfare = optimum;
  summary.rows.resize(reps);

  Rng master(seed);
  std::vector<std::exception_ptr> failures(reps);
  parallel_for(reps, opts.threads, [&](int rep) {
    try {
      std::uint64_t rep_seed = master.split(static_cast<std::uint64_t>(rep)).next_u64();
      TrainingDraw draw = make_training_panel(dgp, n_train, rep_seed, alloc_opts.solve);

      Theta theta_hat;
      if (opts.force_theta_hat.has_value()) {
        theta_hat = *opts.force_theta_hat;
      } else {
        FirstStageConfig fs = opts.first_stage_config;
        if (opts.first_stage == FirstStage::oracle) fs.oracle_sigma = draw.true_sigma;
        FitReport fit = fit_mle(draw.panel, ShockDistribution(dgp.shock), opts.first_stage, fs,
                                opts.optimizer);
        theta_hat = fit.theta_hat;
        if (opts.project_supermodular) {
          theta_hat.theta5 = std::max(theta_hat.theta5, 0.0);
          theta_hat.theta6 = std::max(theta_hat.theta6, -theta_hat.theta5);
        }
      }

      Game empirical(target_game.network(), target_game.covariates(), theta_hat,
                     target_game.shock());
      AllocationResult greedy = greedy_allocate(empirical, kappa, alloc_opts);

      double emp_best = -std::numeric_limits<double>::infinity();
      double est_gap = 0.0;
      double greedy_true = 0.0;
      double greedy_emp = 0.0;
      for (std::size_t a = 0; a < feasible.size(); ++a) {
        double w_emp = worst_case_welfare(empirical, feasible[a], alloc_opts.objective,
                                          alloc_opts.solve);
        emp_best = std::max(emp_best, w_emp);
        est_gap = std::max(est_gap, std::abs(w_emp - true_welfare[a]));
        if (feasible[a].d == greedy.allocation.d) {
          greedy_true = true_welfare[a];
          greedy_emp = w_emp;
        }
      }

      RegretRow& row = summary.rows[rep];
      row.n_train = n_train;
      row.rep = rep;
      row.regret = optimum - greedy_true;
      row.estimation_gap = est_gap;
      row.greedy_gap = emp_best - greedy_emp;
    } catch (...) {
      failures[rep] = std::current_exception();
    }
  });
  for (const auto& failure : failures)
    if (failure) std::rethrow_exception(failure);

  std::vector<double> regrets;
  regrets.reserve(reps);
  for (const auto& row : summary.rows) regrets.push_back(row.regret);
  std::sort(regrets.begin(), regrets.end());
  double total = 0.0;
  for (double r : regrets) total += r;
  summary.mean_regret = total / reps;
  summary.median_regret = regrets[reps / 2];
  summary.max_regret = regrets.back();
  return summary;
}

}  // namespace netgame
