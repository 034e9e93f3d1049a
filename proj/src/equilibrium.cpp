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

#include "netgame/equilibrium.hpp"

#include <algorithm>
#include <cmath>

#include "netgame/parallel.hpp"

namespace netgame {

void CcpProfile::validate() const {
  for (double v : sigma)
    if (!(v >= 0.0 && v <= 1.0)) throw ValidationError("CCP entries must lie in [0, 1]");
}

namespace {

void apply_map(const UtilityTerms& terms, const ShockDistribution& shock,
               const std::vector<double>& sigma, std::vector<double>& out, int threads) {
  int n = static_cast<int>(sigma.size());
  parallel_for(n, threads, [&](int i) {
    double index = terms.alpha[i];
    const auto& betas = terms.beta[i];
    const auto& nbrs = terms.neighbor_ids[i];
    for (std::size_t k = 0; k < betas.size(); ++k) index += betas[k] * sigma[nbrs[k]];
    out[i] = shock.cdf(index);
  });
}

FixedPointReport iterate(const UtilityTerms& terms, const ShockDistribution& shock,
                         std::vector<double> start, IterationStart direction,
                         const SolveOptions& opts) {
  FixedPointReport report;
  report.direction = direction;
  int n = static_cast<int>(start.size());
  std::vector<double> current = std::move(start);
  std::vector<double> next(n);
  double delta = 0.0;
  for (int t = 1; t <= opts.max_iter; ++t) {
    apply_map(terms, shock, current, next, opts.threads);
    delta = 0.0;
    for (int i = 0; i < n; ++i) {
      double step = std::abs(next[i] - current[i]);
      delta = std::max(delta, step);
      if (next[i] < current[i]) report.monotone_nondecreasing = false;
      if (next[i] > current[i]) report.monotone_nonincreasing = false;
    }
    report.iterations = t;
    if (delta <= opts.tol) {
      report.profile.sigma = std::move(current);
      report.residual = delta;
      report.converged = true;
      return report;
    }
    current.swap(next);
  }
  report.profile.sigma = std::move(current);
  report.residual = delta;
  report.converged = false;
  return report;
}

}  // namespace

CcpProfile ccp_map(const CcpProfile& sigma, const UtilityTerms& terms,
                   const ShockDistribution& shock, int threads) {
  sigma.validate();
  if (sigma.size() != static_cast<int>(terms.alpha.size()))
    throw DimensionMismatch("profile length does not match game size");
  CcpProfile out;
  out.sigma.resize(sigma.size());
  apply_map(terms, shock, sigma.sigma, out.sigma, threads);
  return out;
}

CcpProfile ccp_map(const CcpProfile& sigma, const Game& game, const Allocation& alloc) {
  return ccp_map(sigma, build_utility_terms(game, alloc), game.shock());
}

double residual(const CcpProfile& sigma, const Game& game, const Allocation& alloc) {
  CcpProfile mapped = ccp_map(sigma, game, alloc);
  double r = 0.0;
  for (int i = 0; i < sigma.size(); ++i)
    r = std::max(r, std::abs(sigma.sigma[i] - mapped.sigma[i]));
  return r;
}

FixedPointReport solve_least(const UtilityTerms& terms, const ShockDistribution& shock,
                             const SolveOptions& opts) {
  return iterate(terms, shock, std::vector<double>(terms.alpha.size(), 0.0),
                 IterationStart::from_zeros, opts);
}

FixedPointReport solve_greatest(const UtilityTerms& terms, const ShockDistribution& shock,
                                const SolveOptions& opts) {
  return iterate(terms, shock, std::vector<double>(terms.alpha.size(), 1.0),
                 IterationStart::from_ones, opts);
}

FixedPointReport solve_from(const UtilityTerms& terms, const ShockDistribution& shock,
                            const CcpProfile& start, const SolveOptions& opts) {
  start.validate();
  if (start.size() != static_cast<int>(terms.alpha.size()))
    throw DimensionMismatch("start profile length does not match game size");
  return iterate(terms, shock, start.sigma, IterationStart::custom_start, opts);
}

namespace {

UtilityTerms checked_terms(const Game& game, const Allocation& alloc, const SolveOptions& opts) {
  if (!opts.skip_supermodularity_check) {
    auto report = check_supermodular(game, alloc);
    if (!report.pass) throw SupermodularityViolation(report.violations);
  }
  return build_utility_terms(game, alloc);
}

}  // namespace

FixedPointReport solve_least(const Game& game, const Allocation& alloc,
                             const SolveOptions& opts) {
  return solve_least(checked_terms(game, alloc, opts), game.shock(), opts);
}

FixedPointReport solve_greatest(const Game& game, const Allocation& alloc,
                                const SolveOptions& opts) {
  return solve_greatest(checked_terms(game, alloc, opts), game.shock(), opts);
}

FixedPointReport solve_from(const Game& game, const Allocation& alloc, const CcpProfile& start,
                            const SolveOptions& opts) {
  return solve_from(checked_terms(game, alloc, opts), game.shock(), start, opts);
}

}  // namespace netgame
