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

#ifndef NETGAME_ALLOCATION_HPP_
#define NETGAME_ALLOCATION_HPP_

#include <cstdint>
#include <vector>

#include "netgame/welfare.hpp"

namespace netgame {

enum class AllocationMethod { greedy, exhaustive, random };

std::string to_string(AllocationMethod method);

struct GreedyRound {
  int chosen = -1;
  // (candidate unit, marginal gain) for every untreated unit this round.
  std::vector<std::pair<int, double>> gains;
  double welfare_after = 0.0;
};

struct AllocationResult {
  Allocation allocation;
  double welfare_lower = 0.0;
  double welfare_upper = 0.0;
  std::vector<GreedyRound> trace;
  AllocationMethod method = AllocationMethod::greedy;
};

struct AllocOptions {
  WelfareObjective objective = WelfareObjective::engagement;
  SolveOptions solve;
  // Halt greedy early once the best marginal gain is <= 0 instead of
  // spending the full capacity.
  bool stop_if_nonpositive = false;
  // Start candidate solves from the incumbent least profile; the chosen
  // candidate is re-solved from zeros before being recorded.
  bool warm_start = false;
  int threads = 1;
  // Cap on the number of candidate allocations exhaustive search may visit.
  std::uint64_t budget = 2'000'000;
};

// Worst-case (least favorable selection) welfare of one allocation:
// engagement at the least equilibrium, or the lower utilitarian bound.
double worst_case_welfare(const Game& game, const Allocation& alloc, WelfareObjective objective,
                          const SolveOptions& opts = {});

// Gain in worst-case welfare from flipping unit i to treated, each side
// evaluated at its own least equilibrium. Requires d_i = 0.
double marginal_gain(const Game& game, const Allocation& current, int i,
                     WelfareObjective objective, const SolveOptions& opts = {});

// kappa rounds of most-influential-unit selection: each round evaluates the
// marginal gain of every untreated unit and treats the argmax (ties to the
// lowest index). By default all kappa assignments are made even when gains
// turn negative, matching the capacity-binding loop.
AllocationResult greedy_allocate(const Game& game, int kappa, const AllocOptions& opts = {});

// Evaluates every allocation with at most kappa treated units and returns
// the argmax of worst-case welfare; ties go to the lexicographically
// smallest treatment vector. Throws BudgetExceeded if C(N, <=kappa) exceeds
// opts.budget.
AllocationResult exhaustive_allocate(const Game& game, int kappa, const AllocOptions& opts = {});

struct RandomAllocationReport {
  std::vector<AllocationResult> draws;
  double mean_lower = 0.0;
  double mean_upper = 0.0;
};

// draws allocations of exactly min(kappa, N) treated units, uniformly
// without replacement, deterministic in the seed. Each draw carries its own
// welfare bounds.
RandomAllocationReport random_allocate(const Game& game, int kappa, std::uint64_t seed,
                                       int draws, const AllocOptions& opts = {});

}  // namespace netgame

#endif  // NETGAME_ALLOCATION_HPP_
