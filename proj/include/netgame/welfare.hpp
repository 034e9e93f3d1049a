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

#ifndef NETGAME_WELFARE_HPP_
#define NETGAME_WELFARE_HPP_

#include <optional>
#include <string>

#include "netgame/equilibrium.hpp"
#include "netgame/game.hpp"

namespace netgame {

enum class WelfareObjective { engagement, utilitarian };

WelfareObjective objective_from_string(const std::string& name);
std::string to_string(WelfareObjective objective);

// Identified interval of equilibrium welfare over all selection mechanisms,
// together with the extremal profiles that attain it.
struct WelfareBounds {
  double lower = 0.0;
  double upper = 0.0;
  CcpProfile least_profile;
  CcpProfile greatest_profile;
  WelfareObjective objective = WelfareObjective::engagement;
  // Filled when the literal-text variant of the utilitarian upper bound is
  // requested alongside the mirrored one (see utilitarian_bounds).
  std::optional<double> literal_upper;
};

// Average choice probability, (1/N) sum_i sigma_i.
double engagement_welfare(const CcpProfile& sigma);

// Average expected deterministic utility at an equilibrium profile:
// (1/N) sum_i alpha_i sigma_i + (1/N) sum_i sum_{j != i} beta_ij sigma_i sigma_j.
// Shock independence turns the joint choice probability into the product.
// If warning is non-null and sigma is not a fixed point to within
// residual_tol, a description is stored there (the value is then not an
// equilibrium welfare).
double utilitarian_welfare(const CcpProfile& sigma, const Game& game, const Allocation& alloc,
                           std::string* warning = nullptr, double residual_tol = 1e-8);

// [engagement at least equilibrium, engagement at greatest equilibrium]:
// exact infimum and supremum over all equilibrium selection mechanisms.
WelfareBounds engagement_bounds(const Game& game, const Allocation& alloc,
                                const SolveOptions& opts = {});

// Utilitarian interval. The lower bound follows the stated case split
//   first-term profile = least if alpha_i > 0, greatest otherwise,
// with the quadratic term at the least profile. The upper bound mirrors the
// split (greatest if alpha_i > 0, least otherwise) with the quadratic term
// at the greatest profile, which is the unique choice keeping
// lower <= upper for every sign pattern. Setting strict_corollary also
// evaluates the upper bound with the lower bound's first term verbatim and
// stores it in literal_upper.
WelfareBounds utilitarian_bounds(const Game& game, const Allocation& alloc,
                                 const SolveOptions& opts = {}, bool strict_corollary = false);

WelfareBounds welfare_bounds(const Game& game, const Allocation& alloc,
                             WelfareObjective objective, const SolveOptions& opts = {});

}  // namespace netgame

#endif  // NETGAME_WELFARE_HPP_
