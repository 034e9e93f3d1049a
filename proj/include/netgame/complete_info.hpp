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

#ifndef NETGAME_COMPLETE_INFO_HPP_
#define NETGAME_COMPLETE_INFO_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "netgame/game.hpp"

namespace netgame {

// All pure Nash equilibria of the realized game at one shock draw. Under
// supermodularity the set has pointwise least and greatest members, which
// are stored explicitly.
struct NashSet {
  std::vector<std::vector<std::uint8_t>> equilibria;
  std::vector<std::uint8_t> least;
  std::vector<std::uint8_t> greatest;
  std::vector<double> epsilon_draw;
};

// Scans all 2^N action profiles and keeps those where every unit's action is
// a best response: y_i = 1{alpha_i - eps_i + sum_j beta_ij y_j >= 0} (ties
// choose 1). Requires N <= 16.
//
// A neighborhood decomposition — optimizing over each unit's neighbor
// profile with a consistent monotone completion of the remaining units —
// would push the limit well past 16, but the full scan is kept because this
// module doubles as the toolkit's exact oracle.
NashSet enumerate_nash(const Game& game, const Allocation& alloc,
                       const std::vector<double>& epsilon);

// Synchronous best-response iteration from all-zeros / all-ones; the
// monotone trajectories reach the least / greatest pure Nash equilibrium in
// at most N sweeps each.
std::pair<std::vector<std::uint8_t>, std::vector<std::uint8_t>> extremal_nash_br(
    const Game& game, const Allocation& alloc, const std::vector<double>& epsilon);

// Per-unit probability interval over shock draws:
//   upper_i = Pr(some equilibrium plays y_i = 1)
//   lower_i = 1 - Pr(some equilibrium plays y_i = 0)
struct UnitBounds {
  std::vector<double> lower;
  std::vector<double> upper;
  int draws = 0;
};

// Monte Carlo estimate of the per-unit choice probability bounds over R
// i.i.d. shock draws; deterministic in the seed, draws in parallel.
UnitBounds bound_probabilities_mc(const Game& game, const Allocation& alloc, int draws,
                                  std::uint64_t seed, int threads = 1);

}  // namespace netgame

#endif  // NETGAME_COMPLETE_INFO_HPP_
