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

#ifndef NETGAME_ESTIMATION_HPP_
#define NETGAME_ESTIMATION_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "netgame/equilibrium.hpp"
#include "netgame/game.hpp"

namespace netgame {

// One-shot training data: choices and treatments observed once on a single
// network under an existing policy.
struct ObservedPanel {
  std::vector<std::uint8_t> y;
  std::vector<std::uint8_t> d;
  Covariates covariates;
  Network network;

  int size() const { return network.size(); }
  void validate() const;
};

// Row-major n x cols matrix of second-stage regressors; row i is
// (1, D_i, X_i, X_i D_i, nbr-avg m D, nbr-avg m sigma_hat,
//  nbr-avg m sigma_hat D_i D_j), cols = 2K + 5.
struct Regressors {
  int n = 0;
  int cols = 0;
  std::vector<double> z;

  std::span<const double> row(int i) const {
    return {z.data() + static_cast<std::size_t>(i) * cols, static_cast<std::size_t>(cols)};
  }
};

// Small dense symmetric matrix, row-major.
struct SymMatrix {
  int n = 0;
  std::vector<double> a;

  double at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
  double& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
};

enum class FirstStage { frequency, flexible_logit, oracle };

FirstStage first_stage_from_string(const std::string& name);
std::string to_string(FirstStage method);

struct FirstStageConfig {
  // Fitted probabilities are clamped into [clamp, 1 - clamp].
  double clamp = 1e-6;
  // Decimal places used to bin continuous covariates for the frequency
  // estimator's type signature.
  int bin_decimals = 1;
  // True profile for the oracle pass-through (synthetic experiments only).
  std::optional<CcpProfile> oracle_sigma;
};

struct FirstStageResult {
  CcpProfile sigma;
  int clamp_events = 0;
  std::vector<std::string> warnings;
};

// Estimates the CCP profile in the training data.
//  - frequency: mean outcome within groups sharing the rounded type
//    signature (own treatment, binned covariates, binned neighbor summary);
//  - flexible_logit: logistic regression of y on own covariates, their
//    squares, own treatment, neighbor means of covariates and treatment, and
//    covariate x neighbor-mean interactions;
//  - oracle: pass-through of config.oracle_sigma.
FirstStageResult first_stage_ccp(const ObservedPanel& panel, FirstStage method,
                                 const FirstStageConfig& config = {});

Regressors build_regressors(const ObservedPanel& panel, const CcpProfile& sigma_hat);

// Average log-likelihood (1/n) sum_i y_i log F(z_i'theta)
//   + (1 - y_i) log(1 - F(z_i'theta)), with F clamped into
// [1e-12, 1 - 1e-12] before the logs.
double quasi_loglik(const Theta& theta, const Regressors& z, const std::vector<std::uint8_t>& y,
                    const ShockDistribution& shock);
double quasi_loglik(std::span<const double> theta_flat, const Regressors& z,
                    const std::vector<std::uint8_t>& y, const ShockDistribution& shock);

// Analytic score and Hessian of quasi_loglik. The Hessian weights are
// y omega0(a) - (1 - y) omega1(a), negative under the shape condition, so
// the matrix is symmetric negative semidefinite.
struct GradientHessian {
  std::vector<double> gradient;
  SymMatrix hessian;
};
GradientHessian gradient_and_hessian(const Theta& theta, const Regressors& z,
                                     const std::vector<std::uint8_t>& y,
                                     const ShockDistribution& shock);
GradientHessian gradient_and_hessian(std::span<const double> theta_flat, const Regressors& z,
                                     const std::vector<std::uint8_t>& y,
                                     const ShockDistribution& shock);

struct OptimizerConfig {
  double gradient_tol = 1e-8;  // sup-norm of the score
  int max_iterations = 200;
  // Box [-bound, bound] per coordinate keeping iterates in a compact set.
  double box_bound = 50.0;
  int max_step_halvings = 40;
};

struct FitReport {
  Theta theta_hat;
  double loglik = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  FirstStage first_stage = FirstStage::flexible_logit;
  CcpProfile sigma_hat;
  // Clamp activity: first stage fits plus likelihood clamps at theta_hat.
  // Zero on well-scaled data.
  int first_stage_clamp_events = 0;
  int likelihood_clamp_events = 0;
  std::vector<double> loglik_trace;
  std::vector<std::string> warnings;
};

// Two-step quasi-ML: first-stage CCP estimate, then Newton ascent with the
// analytic gradient and Hessian, step-halving line search, and box
// projection. Throws RankDeficient when the regressor Gram matrix is
// numerically singular.
FitReport fit_mle(const ObservedPanel& panel, const ShockDistribution& shock,
                  FirstStage first_stage_method, const FirstStageConfig& fs_config = {},
                  const OptimizerConfig& opt_config = {});

// 0.05 critical value of chi-square with 3 degrees of freedom, the
// convention used for the 4-bin screening table.
inline constexpr double kChiSquareCritical = 7.815;

struct GofBins {
  int covariate_column = 0;
  // Interior cut points c_1 < ... < c_{B-1} defining B bins
  // (-inf, c_1), [c_1, c_2), ..., [c_{B-1}, inf).
  std::vector<double> cuts;
};

struct GofBinStat {
  int bin = 0;
  int count = 0;
  double observed = 0.0;  // sum of y_i in the bin
  double expected = 0.0;  // sum of model probabilities F(z_i'theta_hat)
  double statistic = 0.0;
  bool flagged = false;
  bool skipped = false;
};

struct GofReport {
  std::vector<GofBinStat> bins;
  double critical_value = kChiSquareCritical;
  std::vector<std::string> warnings;
};

// Per-bin Pearson screening statistic (O - E)^2 / E on outcome counts,
// flagged against kChiSquareCritical. Empty bins are skipped with a warning.
GofReport gof_chisq(const ObservedPanel& panel, const FitReport& fit, const GofBins& bins,
                    const ShockDistribution& shock);

}  // namespace netgame

#endif  // NETGAME_ESTIMATION_HPP_
