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

#include "netgame/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "netgame/parallel.hpp"
#include "netgame/rng.hpp"

namespace netgame {

std::string to_string(AllocationMethod method) {
  switch (method) {
    case AllocationMethod::greedy: return "greedy";
    case AllocationMethod::exhaustive: return "exhaustive";
    case AllocationMethod::random: return "random";
  }
  return "unknown";
}

namespace {

void require_supermodular(const Game& game, const Allocation& alloc) {
  auto report = check_supermodular(game, alloc);
  if (!report.pass) throw SupermodularityViolation(report.violations);
}

double worst_case_from_terms(const Game& game, const Allocation& alloc,
                             const UtilityTerms& terms, WelfareObjective objective,
                             const SolveOptions& opts) {
  if (objective == WelfareObjective::engagement) {
    FixedPointReport least = solve_least(terms, game.shock(), opts);
    return engagement_welfare(least.profile);
  }
  SolveOptions inner = opts;
  inner.skip_supermodularity_check = true;
  return utilitarian_bounds(game, alloc, inner).lower;
}

// Warm-started engagement objective: iterate the candidate map from the
// incumbent least profile. Exact whenever treatment only raises the map.
double warm_engagement(const Game& game, const UtilityTerms& terms, const CcpProfile& incumbent,
                       const SolveOptions& opts) {
  FixedPointReport fp = solve_from(terms, game.shock(), incumbent, opts);
  return engagement_welfare(fp.profile);
}

std::pair<double, double> bounds_pair(const Game& game, const Allocation& alloc,
                                      WelfareObjective objective, const SolveOptions& opts) {
  SolveOptions inner = opts;
  inner.skip_supermodularity_check = true;
  WelfareBounds b = objective == WelfareObjective::engagement
                        ? engagement_bounds(game, alloc, inner)
                        : utilitarian_bounds(game, alloc, inner);
  return {b.lower, b.upper};
}

bool lex_less(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::uint64_t candidate_count(int n, int kappa) {
  // sum_{r=0}^{kappa} C(n, r), saturating.
  std::uint64_t total = 0;
  std::uint64_t c = 1;
  for (int r = 0; r <= kappa; ++r) {
    if (total > (1ULL << 62) || c > (1ULL << 62)) return 1ULL << 63;
    total += c;
    c = c * static_cast<std::uint64_t>(n - r) / static_cast<std::uint64_t>(r + 1);
  }
  return total;
}

}  // namespace

double worst_case_welfare(const Game& game, const Allocation& alloc, WelfareObjective objective,
                          const SolveOptions& opts) {
  require_supermodular(game, alloc);
  return worst_case_from_terms(game, alloc, build_utility_terms(game, alloc), objective, opts);
}

double marginal_gain(const Game& game, const Allocation& current, int i,
                     WelfareObjective objective, const SolveOptions& opts) {
  if (i < 0 || i >= game.size()) throw ValidationError("unit index out of range");
  if (current.d[i] != 0) throw AlreadyTreated(i);
  Allocation flipped = current;
  flipped.d[i] = 1;
  flipped.kappa = std::max(current.kappa, flipped.treated_count());
  return worst_case_welfare(game, flipped, objective, opts) -
         worst_case_welfare(game, current, objective, opts);
}

AllocationResult greedy_allocate(const Game& game, int kappa, const AllocOptions& opts) {
  int n = game.size();
  if (kappa < 0 || kappa > n)
    throw ValidationError("kappa must lie in [0, N]");
  AllocationResult result;
  result.method = AllocationMethod::greedy;
  result.allocation = Allocation{std::vector<std::uint8_t>(n, 0), kappa};

  SolveOptions solve_opts = opts.solve;
  solve_opts.threads = 1;  // parallelism is across candidates
  solve_opts.skip_supermodularity_check = true;

  for (int round = 0; round < kappa; ++round) {
    require_supermodular(game, result.allocation);
    UtilityTerms incumbent_terms = build_utility_terms(game, result.allocation);
    double incumbent_w =
        worst_case_from_terms(game, result.allocation, incumbent_terms, opts.objective, solve_opts);
    CcpProfile incumbent_least;
    if (opts.warm_start && opts.objective == WelfareObjective::engagement)
      incumbent_least = solve_least(incumbent_terms, game.shock(), solve_opts).profile;

    std::vector<int> candidates;
    candidates.reserve(n);
    for (int i = 0; i < n; ++i)
      if (result.allocation.d[i] == 0) candidates.push_back(i);

    std::vector<double> gains(candidates.size());
    parallel_for(static_cast<int>(candidates.size()), opts.threads, [&](int c) {
      Allocation flipped = result.allocation;
      flipped.d[candidates[c]] = 1;
      auto violations = check_supermodular(game, flipped);
      if (!violations.pass) {
        gains[c] = std::numeric_limits<double>::quiet_NaN();
        return;
      }
      UtilityTerms terms = build_utility_terms(game, flipped);
      double w = opts.warm_start && opts.objective == WelfareObjective::engagement
                     ? warm_engagement(game, terms, incumbent_least, solve_opts)
                     : worst_case_from_terms(game, flipped, terms, opts.objective, solve_opts);
      gains[c] = w - incumbent_w;
    });

    int best = -1;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (std::isnan(gains[c])) {
        Allocation flipped = result.allocation;
        flipped.d[candidates[c]] = 1;
        auto violations = check_supermodular(game, flipped);
        throw SupermodularityViolation(violations.violations);
      }
      if (best < 0 || gains[c] > gains[best]) best = static_cast<int>(c);
    }

    GreedyRound record;
    record.chosen = candidates[best];
    record.gains.reserve(candidates.size());
    for (std::size_t c = 0; c < candidates.size(); ++c)
      record.gains.emplace_back(candidates[c], gains[c]);

    if (opts.stop_if_nonpositive && gains[best] <= 0.0) break;

    result.allocation.d[candidates[best]] = 1;
    if (opts.warm_start) {
      // Validate the winner with a cold start; the recorded welfare is the
      // zero-start value regardless of how the gains were screened.
      record.welfare_after = worst_case_from_terms(
          game, result.allocation, build_utility_terms(game, result.allocation), opts.objective,
          solve_opts);
    } else {
      record.welfare_after = incumbent_w + gains[best];
    }
    result.trace.push_back(std::move(record));
  }

  auto [lower, upper] = bounds_pair(game, result.allocation, opts.objective, solve_opts);
  result.welfare_lower = lower;
  result.welfare_upper = upper;
  return result;
}

AllocationResult exhaustive_allocate(const Game& game, int kappa, const AllocOptions& opts) {
  int n = game.size();
  if (kappa < 0 || kappa > n) throw ValidationError("kappa must lie in [0, N]");
  std::uint64_t count = candidate_count(n, kappa);
  if (count > opts.budget)
    throw BudgetExceeded("exhaustive search needs " + std::to_string(count) +
                         " candidates, budget is " + std::to_string(opts.budget));

  SolveOptions solve_opts = opts.solve;
  solve_opts.skip_supermodularity_check = true;

  AllocationResult best;
  best.method = AllocationMethod::exhaustive;
  bool have_best = false;

  std::vector<int> chosen;
  Allocation candidate{std::vector<std::uint8_t>(n, 0), kappa};
  auto evaluate = [&]() {
    require_supermodular(game, candidate);
    double w = worst_case_from_terms(game, candidate, build_utility_terms(game, candidate),
                                     opts.objective, solve_opts);
    if (!have_best || w > best.welfare_lower ||
        (w == best.welfare_lower && lex_less(candidate.d, best.allocation.d))) {
      best.allocation = candidate;
      best.welfare_lower = w;
      have_best = true;
    }
  };

  // Depth-first over index combinations of size 0..kappa.
  auto recurse = [&](auto&& self, int next, int remaining) -> void {
    evaluate();
    if (remaining == 0) return;
    for (int i = next; i < n; ++i) {
      candidate.d[i] = 1;
      self(self, i + 1, remaining - 1);
      candidate.d[i] = 0;
    }
  };
  recurse(recurse, 0, kappa);

  auto [lower, upper] = bounds_pair(game, best.allocation, opts.objective, solve_opts);
  best.welfare_lower = lower;
  best.welfare_upper = upper;
  return best;
}

RandomAllocationReport random_allocate(const Game& game, int kappa, std::uint64_t seed,
                                       int draws, const AllocOptions& opts) {
  int n = game.size();
  if (kappa < 0 || kappa > n) throw ValidationError("kappa must lie in [0, N]");
  if (draws < 0) throw ValidationError("draw count must be nonnegative");

  RandomAllocationReport report;
  report.draws.resize(draws);
  Rng rng(seed);
  SolveOptions solve_opts = opts.solve;
  solve_opts.threads = 1;

  // Draw and validate serially (cheap, and keeps exceptions out of workers);
  // the per-draw solves run in parallel over independent slots.
  for (int t = 0; t < draws; ++t) {
    Rng task = rng.split(static_cast<std::uint64_t>(t));
    std::vector<int> treated = task.sample_without_replacement(n, kappa);
    report.draws[t].method = AllocationMethod::random;
    report.draws[t].allocation = Allocation::from_treated(n, treated, kappa);
    require_supermodular(game, report.draws[t].allocation);
  }
  parallel_for(draws, opts.threads, [&](int t) {
    AllocationResult& slot = report.draws[t];
    auto [lower, upper] = bounds_pair(game, slot.allocation, opts.objective, solve_opts);
    slot.welfare_lower = lower;
    slot.welfare_upper = upper;
  });

  if (draws > 0) {
    double sum_lower = 0.0;
    double sum_upper = 0.0;
    for (const auto& d : report.draws) {
      sum_lower += d.welfare_lower;
      sum_upper += d.welfare_upper;
    }
    report.mean_lower = sum_lower / draws;
    report.mean_upper = sum_upper / draws;
  }
  return report;
}

}  // namespace netgame
