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

#ifndef NETGAME_EQUILIBRIUM_HPP_
#define NETGAME_EQUILIBRIUM_HPP_

#include <vector>

#include "netgame/game.hpp"

namespace netgame {

// Conditional choice probability profile, one entry per unit in [0, 1].
struct CcpProfile {
  std::vector<double> sigma;

  static CcpProfile constant(int n, double value) {
    return CcpProfile{std::vector<double>(n, value)};
  }
  int size() const { return static_cast<int>(sigma.size()); }
  void validate() const;
};

enum class IterationStart { from_zeros, from_ones, custom_start };

struct FixedPointReport {
  CcpProfile profile;
  int iterations = 0;
  // sup-norm distance ||profile - map(profile)||_inf; equals the last
  // successive-iterate step because the profile returned is the pre-image of
  // the step that met the tolerance.
  double residual = 0.0;
  bool converged = false;
  IterationStart direction = IterationStart::custom_start;
  // Exact pointwise comparisons along the whole trajectory.
  bool monotone_nondecreasing = true;
  bool monotone_nonincreasing = true;
};

struct SolveOptions {
  double tol = 1e-10;
  int max_iter = 10000;
  int threads = 1;
  // Skip the supermodularity precondition check (the caller already did it).
  bool skip_supermodularity_check = false;
};

// One application of the best-response map:
// map_i(sigma) = F_eps(alpha_i + sum_{j != i} beta_ij sigma_j).
CcpProfile ccp_map(const CcpProfile& sigma, const Game& game, const Allocation& alloc);
CcpProfile ccp_map(const CcpProfile& sigma, const UtilityTerms& terms,
                   const ShockDistribution& shock, int threads = 1);

// ||sigma - map(sigma)||_inf.
double residual(const CcpProfile& sigma, const Game& game, const Allocation& alloc);

// Monotone iteration from the all-zeros profile; converges upward to the
// least equilibrium CCP profile. Throws SupermodularityViolation if the game
// fails the beta >= 0 check under this allocation.
FixedPointReport solve_least(const Game& game, const Allocation& alloc,
                             const SolveOptions& opts = {});

// Mirror image from the all-ones profile; converges downward to the greatest
// equilibrium CCP profile.
FixedPointReport solve_greatest(const Game& game, const Allocation& alloc,
                                const SolveOptions& opts = {});

// Iterates from an arbitrary start. Converged results are fixed points but
// carry no extremality guarantee; use the sandwich check against
// solve_least/solve_greatest to locate them.
FixedPointReport solve_from(const Game& game, const Allocation& alloc, const CcpProfile& start,
                            const SolveOptions& opts = {});

// Same solvers on prebuilt terms, for callers that sweep many allocations.
FixedPointReport solve_least(const UtilityTerms& terms, const ShockDistribution& shock,
                             const SolveOptions& opts = {});
FixedPointReport solve_greatest(const UtilityTerms& terms, const ShockDistribution& shock,
                                const SolveOptions& opts = {});
FixedPointReport solve_from(const UtilityTerms& terms, const ShockDistribution& shock,
                            const CcpProfile& start, const SolveOptions& opts = {});

}  // namespace netgame

#endif  // NETGAME_EQUILIBRIUM_HPP_
