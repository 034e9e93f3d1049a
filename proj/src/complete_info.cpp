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

#include "netgame/complete_info.hpp"

#include <cmath>
#include <exception>

#include "netgame/parallel.hpp"
#include "netgame/rng.hpp"

namespace netgame {

namespace {

constexpr int kEnumerationLimit = 16;

// Realized thresholds t_i = alpha_i - eps_i; unit i plays 1 against profile
// y iff t_i + sum_j beta_ij y_j >= 0.
struct RealizedGame {
  std::vector<double> threshold;
  const UtilityTerms* terms;
};

RealizedGame realize(const UtilityTerms& terms, const std::vector<double>& epsilon) {
  if (epsilon.size() != terms.alpha.size())
    throw DimensionMismatch("epsilon draw length does not match game size");
  RealizedGame g;
  g.threshold.resize(terms.alpha.size());
  for (std::size_t i = 0; i < terms.alpha.size(); ++i)
    g.threshold[i] = terms.alpha[i] - epsilon[i];
  g.terms = &terms;
  return g;
}

bool best_response_one(const RealizedGame& g, int i, std::uint32_t mask) {
  double u = g.threshold[i];
  const auto& betas = g.terms->beta[i];
  const auto& nbrs = g.terms->neighbor_ids[i];
  for (std::size_t k = 0; k < betas.size(); ++k)
    if (mask & (1u << nbrs[k])) u += betas[k];
  return u >= 0.0;
}

bool is_equilibrium(const RealizedGame& g, std::uint32_t mask, int n) {
  for (int i = 0; i < n; ++i) {
    bool wants_one = best_response_one(g, i, mask);
    bool plays_one = (mask >> i) & 1u;
    if (wants_one != plays_one) return false;
  }
  return true;
}

std::vector<std::uint8_t> mask_to_profile(std::uint32_t mask, int n) {
  std::vector<std::uint8_t> y(n);
  for (int i = 0; i < n; ++i) y[i] = (mask >> i) & 1u;
  return y;
}

std::uint32_t synchronous_br_fixed_point(const RealizedGame& g, int n, std::uint32_t start) {
  std::uint32_t current = start;
  // Monotone trajectories flip each coordinate at most once.
  for (int round = 0; round <= 2 * n + 1; ++round) {
    std::uint32_t next = 0;
    for (int i = 0; i < n; ++i)
      if (best_response_one(g, i, current)) next |= 1u << i;
    if (next == current) return current;
    current = next;
  }
  throw InternalConsistencyError(
      "best-response iteration failed to settle; supermodularity violated?");
}

struct DrawExtremes {
  std::uint32_t least;
  std::uint32_t greatest;
};

DrawExtremes enumerate_extremes(const RealizedGame& g, int n) {
  std::uint32_t and_mask = 0xffffffffu;
  std::uint32_t or_mask = 0;
  bool found = false;
  std::uint32_t top = 1u << n;
  for (std::uint32_t mask = 0; mask < top; ++mask) {
    if (is_equilibrium(g, mask, n)) {
      and_mask &= mask;
      or_mask |= mask;
      found = true;
    }
  }
  if (!found)
    throw InternalConsistencyError("no pure Nash equilibrium found in a supermodular game");
  if (!is_equilibrium(g, and_mask, n) || !is_equilibrium(g, or_mask, n))
    throw InternalConsistencyError("pointwise extremes of the Nash set are not equilibria");
  return {and_mask, or_mask};
}

}  // namespace

NashSet enumerate_nash(const Game& game, const Allocation& alloc,
                       const std::vector<double>& epsilon) {
  int n = game.size();
  if (n > kEnumerationLimit)
    throw BudgetExceeded("Nash enumeration supports at most " +
                         std::to_string(kEnumerationLimit) + " units");
  UtilityTerms terms = build_utility_terms(game, alloc);
  RealizedGame g = realize(terms, epsilon);

  NashSet set;
  set.epsilon_draw = epsilon;
  std::uint32_t and_mask = 0xffffffffu;
  std::uint32_t or_mask = 0;
  std::uint32_t top = 1u << n;
  for (std::uint32_t mask = 0; mask < top; ++mask) {
    if (is_equilibrium(g, mask, n)) {
      set.equilibria.push_back(mask_to_profile(mask, n));
      and_mask &= mask;
      or_mask |= mask;
    }
  }
  if (set.equilibria.empty())
    throw InternalConsistencyError("no pure Nash equilibrium found in a supermodular game");
  if (!is_equilibrium(g, and_mask, n) || !is_equilibrium(g, or_mask, n))
    throw InternalConsistencyError("pointwise extremes of the Nash set are not equilibria");
  set.least = mask_to_profile(and_mask, n);
  set.greatest = mask_to_profile(or_mask, n);
  return set;
}

std::pair<std::vector<std::uint8_t>, std::vector<std::uint8_t>> extremal_nash_br(
    const Game& game, const Allocation& alloc, const std::vector<double>& epsilon) {
  auto report = check_supermodular(game, alloc);
  if (!report.pass) throw SupermodularityViolation(report.violations);
  int n = game.size();
  if (n > kEnumerationLimit)
    throw BudgetExceeded("best-response masks support at most " +
                         std::to_string(kEnumerationLimit) + " units");
  UtilityTerms terms = build_utility_terms(game, alloc);
  RealizedGame g = realize(terms, epsilon);
  std::uint32_t least = synchronous_br_fixed_point(g, n, 0);
  std::uint32_t greatest = synchronous_br_fixed_point(g, n, (1u << n) - 1u);
  return {mask_to_profile(least, n), mask_to_profile(greatest, n)};
}

UnitBounds bound_probabilities_mc(const Game& game, const Allocation& alloc, int draws,
                                  std::uint64_t seed, int threads) {
  int n = game.size();
  if (n > kEnumerationLimit)
    throw BudgetExceeded("probability bounds require enumeration; at most " +
                         std::to_string(kEnumerationLimit) + " units");
  if (draws <= 0) throw ValidationError("draw count must be positive");
  UtilityTerms terms = build_utility_terms(game, alloc);
  const ShockDistribution& shock = game.shock();
  Rng rng(seed);

  // Per draw: bit i of ones[t] says some equilibrium plays y_i = 1, bit i of
  // zeros[t] says some equilibrium plays y_i = 0.
  std::vector<std::uint32_t> ones(draws);
  std::vector<std::uint32_t> zeros(draws);
  std::vector<std::exception_ptr> failures(draws);
  parallel_for(draws, threads, [&](int t) {
    try {
      Rng task = rng.split(static_cast<std::uint64_t>(t));
      std::vector<double> eps(n);
      for (int i = 0; i < n; ++i) eps[i] = shock.quantile(task.next_open_double());
      RealizedGame g = realize(terms, eps);
      DrawExtremes extremes = enumerate_extremes(g, n);
      ones[t] = extremes.greatest;
      zeros[t] = ~extremes.least;
    } catch (...) {
      failures[t] = std::current_exception();
    }
  });
  for (const auto& failure : failures)
    if (failure) std::rethrow_exception(failure);

  UnitBounds bounds;
  bounds.draws = draws;
  bounds.lower.resize(n);
  bounds.upper.resize(n);
  for (int i = 0; i < n; ++i) {
    long one_count = 0;
    long zero_count = 0;
    for (int t = 0; t < draws; ++t) {
      one_count += (ones[t] >> i) & 1u;
      zero_count += (zeros[t] >> i) & 1u;
    }
    bounds.upper[i] = static_cast<double>(one_count) / draws;
    bounds.lower[i] = 1.0 - static_cast<double>(zero_count) / draws;
  }
  return bounds;
}

}  // namespace netgame
