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

#include "netgame/welfare.hpp"

#include <cmath>
#include <sstream>

namespace netgame {

WelfareObjective objective_from_string(const std::string& name) {
  if (name == "engagement") return WelfareObjective::engagement;
  if (name == "utilitarian") return WelfareObjective::utilitarian;
  throw ValidationError("unknown welfare objective: " + name);
}

std::string to_string(WelfareObjective objective) {
  return objective == WelfareObjective::engagement ? "engagement" : "utilitarian";
}

double engagement_welfare(const CcpProfile& sigma) {
  sigma.validate();
  if (sigma.size() == 0) return 0.0;
  double total = 0.0;
  for (double v : sigma.sigma) total += v;
  return total / sigma.size();
}

namespace {

double utilitarian_value(const UtilityTerms& terms, const std::vector<double>& first_term_sigma,
                         const std::vector<double>& quad_sigma) {
  int n = terms.size();
  if (n == 0) return 0.0;
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    total += terms.alpha[i] * first_term_sigma[i];
    const auto& betas = terms.beta[i];
    const auto& nbrs = terms.neighbor_ids[i];
    for (std::size_t k = 0; k < betas.size(); ++k)
      total += betas[k] * quad_sigma[i] * quad_sigma[nbrs[k]];
  }
  return total / n;
}

// First-term profile for the lower bound: alpha_i > 0 picks the profile that
// minimizes alpha_i * sigma_i, i.e. the least one; alpha_i <= 0 the greatest.
std::vector<double> case_split(const std::vector<double>& alpha,
                               const std::vector<double>& positive_side,
                               const std::vector<double>& nonpositive_side) {
  std::vector<double> out(alpha.size());
  for (std::size_t i = 0; i < alpha.size(); ++i)
    out[i] = alpha[i] > 0.0 ? positive_side[i] : nonpositive_side[i];
  return out;
}

}  // namespace

double utilitarian_welfare(const CcpProfile& sigma, const Game& game, const Allocation& alloc,
                           std::string* warning, double residual_tol) {
  sigma.validate();
  if (sigma.size() != game.size())
    throw DimensionMismatch("profile length does not match game size");
  UtilityTerms terms = build_utility_terms(game, alloc);
  if (warning != nullptr) {
    double r = residual(sigma, game, alloc);
    if (r > residual_tol) {
      std::ostringstream msg;
      msg << "profile is not an equilibrium (residual " << r << " > " << residual_tol
          << "); value is not an equilibrium welfare";
      *warning = msg.str();
    }
  }
  return utilitarian_value(terms, sigma.sigma, sigma.sigma);
}

WelfareBounds engagement_bounds(const Game& game, const Allocation& alloc,
                                const SolveOptions& opts) {
  WelfareBounds bounds;
  bounds.objective = WelfareObjective::engagement;
  FixedPointReport least = solve_least(game, alloc, opts);
  FixedPointReport greatest = solve_greatest(game, alloc, opts);
  bounds.lower = engagement_welfare(least.profile);
  bounds.upper = engagement_welfare(greatest.profile);
  bounds.least_profile = std::move(least.profile);
  bounds.greatest_profile = std::move(greatest.profile);
  return bounds;
}

WelfareBounds utilitarian_bounds(const Game& game, const Allocation& alloc,
                                 const SolveOptions& opts, bool strict_corollary) {
  WelfareBounds bounds;
  bounds.objective = WelfareObjective::utilitarian;
  FixedPointReport least = solve_least(game, alloc, opts);
  FixedPointReport greatest = solve_greatest(game, alloc, opts);
  UtilityTerms terms = build_utility_terms(game, alloc);
  const auto& lo = least.profile.sigma;
  const auto& hi = greatest.profile.sigma;
  bounds.lower = utilitarian_value(terms, case_split(terms.alpha, lo, hi), lo);
  bounds.upper = utilitarian_value(terms, case_split(terms.alpha, hi, lo), hi);
  if (strict_corollary)
    bounds.literal_upper = utilitarian_value(terms, case_split(terms.alpha, lo, hi), hi);
  bounds.least_profile = std::move(least.profile);
  bounds.greatest_profile = std::move(greatest.profile);
  return bounds;
}

WelfareBounds welfare_bounds(const Game& game, const Allocation& alloc,
                             WelfareObjective objective, const SolveOptions& opts) {
  return objective == WelfareObjective::engagement ? engagement_bounds(game, alloc, opts)
                                                   : utilitarian_bounds(game, alloc, opts);
}

}  // namespace netgame
