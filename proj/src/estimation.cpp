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

#include "netgame/estimation.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>

namespace netgame {

namespace {

constexpr double kLikClamp = 1e-12;

using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Plain neighbor means of covariate columns and of treatment (zero for
// isolated units). Used by both first-stage estimators.
struct NeighborSummary {
  std::vector<double> mean_x;  // n x K, row-major
  std::vector<double> mean_d;  // n
};

NeighborSummary neighbor_summary(const ObservedPanel& panel) {
  int n = panel.size();
  int k = panel.covariates.dim();
  NeighborSummary s;
  s.mean_x.assign(static_cast<std::size_t>(n) * k, 0.0);
  s.mean_d.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    auto nbrs = panel.network.neighbors(i);
    if (nbrs.empty()) continue;
    double inv = 1.0 / static_cast<double>(nbrs.size());
    double d_sum = 0.0;
    for (int j : nbrs) {
      d_sum += panel.d[j];
      auto xj = panel.covariates.row(j);
      for (int c = 0; c < k; ++c) s.mean_x[static_cast<std::size_t>(i) * k + c] += xj[c];
    }
    for (int c = 0; c < k; ++c) s.mean_x[static_cast<std::size_t>(i) * k + c] *= inv;
    s.mean_d[i] = d_sum * inv;
  }
  return s;
}

double clamp_prob(double p, double clamp, int* events) {
  if (p < clamp) {
    if (events != nullptr) ++*events;
    return clamp;
  }
  if (p > 1.0 - clamp) {
    if (events != nullptr) ++*events;
    return 1.0 - clamp;
  }
  return p;
}

void check_full_rank(const RowMajorMatrix& design, const char* what) {
  Eigen::MatrixXd gram =
      design.transpose() * design / static_cast<double>(std::max<Eigen::Index>(design.rows(), 1));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram, Eigen::EigenvaluesOnly);
  double max_eig = es.eigenvalues().maxCoeff();
  double min_eig = es.eigenvalues().minCoeff();
  if (min_eig <= 1e-10 * std::max(1.0, max_eig))
    throw RankDeficient(std::string(what) + ": design matrix is numerically rank deficient");
}

FirstStageResult frequency_estimator(const ObservedPanel& panel, const FirstStageConfig& config) {
  int n = panel.size();
  int k = panel.covariates.dim();
  NeighborSummary nbr = neighbor_summary(panel);
  double scale = std::pow(10.0, config.bin_decimals);

  using Key = std::vector<long long>;
  std::map<Key, std::pair<double, int>> groups;
  std::vector<Key> keys(n);
  for (int i = 0; i < n; ++i) {
    Key key;
    key.reserve(2 * k + 2);
    key.push_back(panel.d[i]);
    for (int c = 0; c < k; ++c) key.push_back(std::llround(panel.covariates.at(i, c) * scale));
    for (int c = 0; c < k; ++c)
      key.push_back(std::llround(nbr.mean_x[static_cast<std::size_t>(i) * k + c] * scale));
    key.push_back(std::llround(nbr.mean_d[i] * scale));
    auto& cell = groups[key];
    cell.first += panel.y[i];
    cell.second += 1;
    keys[i] = std::move(key);
  }

  double global_mean = 0.0;
  for (int i = 0; i < n; ++i) global_mean += panel.y[i];
  global_mean = n > 0 ? global_mean / n : 0.5;

  FirstStageResult result;
  result.sigma.sigma.resize(n);
  for (int i = 0; i < n; ++i) {
    auto it = groups.find(keys[i]);
    double p;
    if (it == groups.end() || it->second.second == 0) {
      result.warnings.push_back("empty type group for unit " + std::to_string(i) +
                                "; falling back to the global mean");
      p = global_mean;
    } else {
      p = it->second.first / it->second.second;
    }
    result.sigma.sigma[i] = clamp_prob(p, config.clamp, &result.clamp_events);
  }
  return result;
}

FirstStageResult flexible_logit_estimator(const ObservedPanel& panel,
                                          const FirstStageConfig& config) {
  int n = panel.size();
  int k = panel.covariates.dim();
  NeighborSummary nbr = neighbor_summary(panel);

  int cols = 1 + k + k + 1 + k + 1 + k * k;
  RowMajorMatrix design(n, cols);
  for (int i = 0; i < n; ++i) {
    int c = 0;
    design(i, c++) = 1.0;
    auto x = panel.covariates.row(i);
    for (int a = 0; a < k; ++a) design(i, c++) = x[a];
    for (int a = 0; a < k; ++a) design(i, c++) = x[a] * x[a];
    design(i, c++) = panel.d[i];
    for (int a = 0; a < k; ++a) design(i, c++) = nbr.mean_x[static_cast<std::size_t>(i) * k + a];
    design(i, c++) = nbr.mean_d[i];
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b)
        design(i, c++) = x[a] * nbr.mean_x[static_cast<std::size_t>(i) * k + b];
  }
  check_full_rank(design, "flexible_logit");

  Eigen::VectorXd yvec(n);
  for (int i = 0; i < n; ++i) yvec[i] = panel.y[i];

  // Newton ascent on the logistic log-likelihood. Separation makes the
  // Hessian singular in the limit; the small ridge keeps steps finite and
  // the probability clamp below absorbs the rest.
  Eigen::VectorXd coef = Eigen::VectorXd::Zero(cols);
  Eigen::VectorXd p(n);
  for (int iter = 0; iter < 100; ++iter) {
    Eigen::VectorXd index = design * coef;
    for (int i = 0; i < n; ++i) p[i] = 1.0 / (1.0 + std::exp(-index[i]));
    Eigen::VectorXd grad = design.transpose() * (yvec - p) / n;
    if (grad.lpNorm<Eigen::Infinity>() <= 1e-10) break;
    Eigen::VectorXd w = (p.array() * (1.0 - p.array())).matrix();
    Eigen::MatrixXd hess = design.transpose() * w.asDiagonal() * design / n;
    hess.diagonal().array() += 1e-10;
    coef += hess.llt().solve(grad);
  }

  Eigen::VectorXd index = design * coef;
  FirstStageResult result;
  result.sigma.sigma.resize(n);
  for (int i = 0; i < n; ++i) {
    double fitted = 1.0 / (1.0 + std::exp(-index[i]));
    result.sigma.sigma[i] = clamp_prob(fitted, config.clamp, &result.clamp_events);
  }
  return result;
}

}  // namespace

void ObservedPanel::validate() const {
  int n = network.size();
  if (static_cast<int>(y.size()) != n || static_cast<int>(d.size()) != n)
    throw DimensionMismatch("panel choice/treatment vectors must match network size");
  if (covariates.size() != n)
    throw DimensionMismatch("panel covariate rows must match network size");
  for (auto v : y)
    if (v != 0 && v != 1) throw ValidationError("panel choices must be 0 or 1");
  for (auto v : d)
    if (v != 0 && v != 1) throw ValidationError("panel treatments must be 0 or 1");
}

FirstStage first_stage_from_string(const std::string& name) {
  if (name == "frequency") return FirstStage::frequency;
  if (name == "flexible_logit") return FirstStage::flexible_logit;
  if (name == "oracle") return FirstStage::oracle;
  throw ValidationError("unknown first-stage method: " + name);
}

std::string to_string(FirstStage method) {
  switch (method) {
    case FirstStage::frequency: return "frequency";
    case FirstStage::flexible_logit: return "flexible_logit";
    case FirstStage::oracle: return "oracle";
  }
  return "unknown";
}

FirstStageResult first_stage_ccp(const ObservedPanel& panel, FirstStage method,
                                 const FirstStageConfig& config) {
  panel.validate();
  switch (method) {
    case FirstStage::oracle: {
      if (!config.oracle_sigma.has_value())
        throw ValidationError("oracle first stage requires a supplied sigma profile");
      if (config.oracle_sigma->size() != panel.size())
        throw DimensionMismatch("oracle sigma length does not match panel size");
      config.oracle_sigma->validate();
      FirstStageResult result;
      result.sigma = *config.oracle_sigma;
      return result;
    }
    case FirstStage::frequency:
      return frequency_estimator(panel, config);
    case FirstStage::flexible_logit:
      return flexible_logit_estimator(panel, config);
  }
  throw ValidationError("unknown first-stage method");
}

Regressors build_regressors(const ObservedPanel& panel, const CcpProfile& sigma_hat) {
  panel.validate();
  if (sigma_hat.size() != panel.size())
    throw DimensionMismatch("sigma_hat length does not match panel size");
  int n = panel.size();
  int k = panel.covariates.dim();
  Regressors reg;
  reg.n = n;
  reg.cols = 2 * k + 5;
  reg.z.assign(static_cast<std::size_t>(n) * reg.cols, 0.0);

  for (int i = 0; i < n; ++i) {
    double* row = reg.z.data() + static_cast<std::size_t>(i) * reg.cols;
    int c = 0;
    row[c++] = 1.0;
    row[c++] = panel.d[i];
    auto x = panel.covariates.row(i);
    for (int a = 0; a < k; ++a) row[c++] = x[a];
    for (int a = 0; a < k; ++a) row[c++] = x[a] * panel.d[i];

    auto nbrs = panel.network.neighbors(i);
    double spill_d = 0.0;
    double spill_sigma = 0.0;
    double spill_sigma_dd = 0.0;
    if (!nbrs.empty()) {
      for (int j : nbrs) {
        double m = similarity(panel.covariates.row(i), panel.covariates.row(j));
        spill_d += m * panel.d[j];
        spill_sigma += m * sigma_hat.sigma[j];
        spill_sigma_dd += m * sigma_hat.sigma[j] * panel.d[i] * panel.d[j];
      }
      double inv = 1.0 / static_cast<double>(nbrs.size());
      spill_d *= inv;
      spill_sigma *= inv;
      spill_sigma_dd *= inv;
    }
    row[c++] = spill_d;
    row[c++] = spill_sigma;
    row[c++] = spill_sigma_dd;
  }
  return reg;
}

double quasi_loglik(std::span<const double> theta_flat, const Regressors& z,
                    const std::vector<std::uint8_t>& y, const ShockDistribution& shock) {
  if (static_cast<int>(theta_flat.size()) != z.cols)
    throw DimensionMismatch("theta length does not match regressor columns");
  if (static_cast<int>(y.size()) != z.n)
    throw DimensionMismatch("outcome length does not match regressor rows");
  if (z.n == 0) return 0.0;
  double total = 0.0;
  for (int i = 0; i < z.n; ++i) {
    auto row = z.row(i);
    double a = 0.0;
    for (int c = 0; c < z.cols; ++c) a += row[c] * theta_flat[c];
    if (y[i] == 1) {
      total += std::log(std::clamp(shock.cdf(a), kLikClamp, 1.0 - kLikClamp));
    } else {
      total += std::log(std::clamp(shock.cdf_complement(a), kLikClamp, 1.0 - kLikClamp));
    }
  }
  return total / z.n;
}

double quasi_loglik(const Theta& theta, const Regressors& z, const std::vector<std::uint8_t>& y,
                    const ShockDistribution& shock) {
  return quasi_loglik(std::span<const double>(theta.flatten()), z, y, shock);
}

GradientHessian gradient_and_hessian(std::span<const double> theta_flat, const Regressors& z,
                                     const std::vector<std::uint8_t>& y,
                                     const ShockDistribution& shock) {
  if (static_cast<int>(theta_flat.size()) != z.cols)
    throw DimensionMismatch("theta length does not match regressor columns");
  if (static_cast<int>(y.size()) != z.n)
    throw DimensionMismatch("outcome length does not match regressor rows");
  int d = z.cols;
  GradientHessian out;
  out.gradient.assign(d, 0.0);
  out.hessian.n = d;
  out.hessian.a.assign(static_cast<std::size_t>(d) * d, 0.0);
  if (z.n == 0) return out;

  for (int i = 0; i < z.n; ++i) {
    auto row = z.row(i);
    double a = 0.0;
    for (int c = 0; c < d; ++c) a += row[c] * theta_flat[c];
    double dens = shock.pdf(a);
    double score_w;
    double hess_w;
    if (y[i] == 1) {
      score_w = dens / std::max(shock.cdf(a), kLikClamp);
      hess_w = shock.omega0(a);
    } else {
      score_w = -dens / std::max(shock.cdf_complement(a), kLikClamp);
      hess_w = -shock.omega1(a);
    }
    for (int c = 0; c < d; ++c) out.gradient[c] += score_w * row[c];
    for (int r = 0; r < d; ++r) {
      double wr = hess_w * row[r];
      for (int c = r; c < d; ++c) out.hessian.at(r, c) += wr * row[c];
    }
  }
  double inv = 1.0 / z.n;
  for (int c = 0; c < d; ++c) out.gradient[c] *= inv;
  for (int r = 0; r < d; ++r)
    for (int c = r; c < d; ++c) {
      out.hessian.at(r, c) *= inv;
      out.hessian.at(c, r) = out.hessian.at(r, c);
    }
  return out;
}

GradientHessian gradient_and_hessian(const Theta& theta, const Regressors& z,
                                     const std::vector<std::uint8_t>& y,
                                     const ShockDistribution& shock) {
  return gradient_and_hessian(std::span<const double>(theta.flatten()), z, y, shock);
}

FitReport fit_mle(const ObservedPanel& panel, const ShockDistribution& shock,
                  FirstStage first_stage_method, const FirstStageConfig& fs_config,
                  const OptimizerConfig& opt_config) {
  panel.validate();
  FirstStageResult first = first_stage_ccp(panel, first_stage_method, fs_config);
  Regressors z = build_regressors(panel, first.sigma);

  {
    RowMajorMatrix design =
        Eigen::Map<const RowMajorMatrix>(z.z.data(), z.n, z.cols);
    check_full_rank(design, "fit_mle");
  }

  int d = z.cols;
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(d);
  std::span<const double> theta_span(theta.data(), static_cast<std::size_t>(d));

  FitReport report;
  report.first_stage = first_stage_method;
  report.sigma_hat = first.sigma;
  report.first_stage_clamp_events = first.clamp_events;
  report.warnings = first.warnings;

  double current_q = quasi_loglik(theta_span, z, panel.y, shock);
  report.loglik_trace.push_back(current_q);
  double grad_norm = 0.0;
  bool converged = false;
  int iterations = 0;

  for (int iter = 1; iter <= opt_config.max_iterations; ++iter) {
    iterations = iter;
    GradientHessian gh = gradient_and_hessian(theta_span, z, panel.y, shock);
    grad_norm = 0.0;
    for (double g : gh.gradient) grad_norm = std::max(grad_norm, std::abs(g));
    if (grad_norm <= opt_config.gradient_tol) {
      converged = true;
      break;
    }

    Eigen::Map<Eigen::MatrixXd> hess(gh.hessian.a.data(), d, d);
    Eigen::Map<Eigen::VectorXd> grad(gh.gradient.data(), d);
    Eigen::MatrixXd neg_hess = -hess;
    Eigen::LLT<Eigen::MatrixXd> llt(neg_hess);
    if (llt.info() != Eigen::Success) {
      neg_hess.diagonal().array() += 1e-10 * std::max(1.0, neg_hess.diagonal().maxCoeff());
      llt.compute(neg_hess);
      if (llt.info() != Eigen::Success)
        throw RankDeficient("fit_mle: Newton system is not positive definite");
    }
    Eigen::VectorXd direction = llt.solve(grad);

    double step = 1.0;
    bool improved = false;
    for (int h = 0; h <= opt_config.max_step_halvings; ++h) {
      Eigen::VectorXd trial = theta + step * direction;
      for (int c = 0; c < d; ++c)
        trial[c] = std::clamp(trial[c], -opt_config.box_bound, opt_config.box_bound);
      double q = quasi_loglik(std::span<const double>(trial.data(), static_cast<std::size_t>(d)),
                              z, panel.y, shock);
      if (q > current_q) {
        theta = trial;
        current_q = q;
        improved = true;
        break;
      }
      step *= 0.5;
    }
    report.loglik_trace.push_back(current_q);
    if (!improved) break;  // flat to machine precision; gradient check decides
  }

  if (!converged) {
    GradientHessian gh = gradient_and_hessian(theta_span, z, panel.y, shock);
    grad_norm = 0.0;
    for (double g : gh.gradient) grad_norm = std::max(grad_norm, std::abs(g));
    converged = grad_norm <= opt_config.gradient_tol;
    if (!converged)
      report.warnings.push_back("Newton ascent did not reach the gradient tolerance; "
                                "returning the best iterate");
  }

  report.theta_hat =
      Theta::unflatten(std::span<const double>(theta.data(), static_cast<std::size_t>(d)),
                       panel.covariates.dim());
  report.loglik = current_q;
  report.gradient_norm = grad_norm;
  report.iterations = iterations;
  report.converged = converged;

  for (int i = 0; i < z.n; ++i) {
    auto row = z.row(i);
    double a = 0.0;
    for (int c = 0; c < d; ++c) a += row[c] * theta[c];
    double f = shock.cdf(a);
    if (f < kLikClamp || f > 1.0 - kLikClamp) ++report.likelihood_clamp_events;
  }
  return report;
}

GofReport gof_chisq(const ObservedPanel& panel, const FitReport& fit, const GofBins& bins,
                    const ShockDistribution& shock) {
  panel.validate();
  if (bins.covariate_column < 0 || bins.covariate_column >= panel.covariates.dim())
    throw ValidationError("gof binning column out of range");
  for (std::size_t b = 1; b < bins.cuts.size(); ++b)
    if (!(bins.cuts[b - 1] < bins.cuts[b]))
      throw ValidationError("gof bin cuts must be strictly increasing");

  Regressors z = build_regressors(panel, fit.sigma_hat);
  std::vector<double> theta = fit.theta_hat.flatten();
  if (static_cast<int>(theta.size()) != z.cols)
    throw DimensionMismatch("fitted theta does not match panel covariate dimension");

  int nbins = static_cast<int>(bins.cuts.size()) + 1;
  GofReport report;
  report.bins.resize(nbins);
  for (int b = 0; b < nbins; ++b) report.bins[b].bin = b;

  for (int i = 0; i < panel.size(); ++i) {
    double x = panel.covariates.at(i, bins.covariate_column);
    int b = static_cast<int>(std::upper_bound(bins.cuts.begin(), bins.cuts.end(), x) -
                             bins.cuts.begin());
    auto row = z.row(i);
    double a = 0.0;
    for (int c = 0; c < z.cols; ++c) a += row[c] * theta[c];
    report.bins[b].count += 1;
    report.bins[b].observed += panel.y[i];
    report.bins[b].expected += shock.cdf(a);
  }

  for (auto& bin : report.bins) {
    if (bin.count == 0 || bin.expected <= kLikClamp) {
      bin.skipped = true;
      report.warnings.push_back("bin " + std::to_string(bin.bin) + " is empty; skipped");
      continue;
    }
    double diff = bin.observed - bin.expected;
    bin.statistic = diff * diff / bin.expected;
    bin.flagged = bin.statistic > kChiSquareCritical;
  }
  return report;
}

}  // namespace netgame
