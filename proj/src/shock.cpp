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

#include "netgame/shock.hpp"

#include <algorithm>
#include <cmath>

#include "netgame/errors.hpp"

namespace netgame {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;  // 1/sqrt(2*pi)
constexpr double kSqrt2 = 1.4142135623730950488;

double logistic_cdf(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  double e = std::exp(x);
  return e / (1.0 + e);
}

double logistic_pdf(double x) {
  double e = std::exp(-std::abs(x));
  double d = 1.0 + e;
  return e / (d * d);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

// Acklam's rational approximation for the standard normal quantile,
// polished below with Newton steps against erfc-based cdf.
double normal_quantile_approx(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  if (p < plow) {
    double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - plow) {
    double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  double q = p - 0.5;
  double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

double normal_quantile(double p) {
  double x = normal_quantile_approx(p);
  for (int step = 0; step < 2; ++step) {
    double err = normal_cdf(x) - p;
    double dens = normal_pdf(x);
    if (dens <= 0.0) break;
    x -= err / dens;
  }
  return x;
}

}  // namespace

ShockKind shock_kind_from_string(const std::string& name) {
  if (name == "logistic") return ShockKind::logistic;
  if (name == "gaussian" || name == "normal") return ShockKind::gaussian;
  throw ValidationError("unknown shock distribution: " + name);
}

std::string to_string(ShockKind kind) {
  return kind == ShockKind::logistic ? "logistic" : "gaussian";
}

double ShockDistribution::cdf(double x) const {
  return kind_ == ShockKind::logistic ? logistic_cdf(x) : normal_cdf(x);
}

double ShockDistribution::cdf_complement(double x) const {
  if (kind_ == ShockKind::logistic) return logistic_cdf(-x);
  return 0.5 * std::erfc(x / kSqrt2);
}

double ShockDistribution::pdf(double x) const {
  return kind_ == ShockKind::logistic ? logistic_pdf(x) : normal_pdf(x);
}

double ShockDistribution::pdf_deriv(double x) const {
  if (kind_ == ShockKind::logistic) {
    // F'' = F'(1 - 2F); 1 - 2F written as (1-F) - F to stay exact in the tails.
    return logistic_pdf(x) * (cdf_complement(x) - logistic_cdf(x));
  }
  return -x * normal_pdf(x);
}

double ShockDistribution::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) throw ValidationError("quantile requires p in (0, 1)");
  if (kind_ == ShockKind::logistic) return std::log(p) - std::log1p(-p);
  return normal_quantile(p);
}

double ShockDistribution::density_bound() const {
  return kind_ == ShockKind::logistic ? 0.25 : kInvSqrt2Pi;
}

double ShockDistribution::omega0(double a) const {
  if (kind_ == ShockKind::logistic) {
    // (F'' F - F'^2)/F^2 collapses to -F(1-F) for the logistic.
    return -logistic_pdf(a);
  }
  double f = std::max(cdf(a), 1e-300);
  double r = pdf(a) / f;
  return -a * r - r * r;
}

double ShockDistribution::omega1(double a) const {
  if (kind_ == ShockKind::logistic) return logistic_pdf(a);
  double s = std::max(cdf_complement(a), 1e-300);
  double r = pdf(a) / s;
  return -a * r + r * r;
}

bool ShockDistribution::shape_condition_holds(double x) const {
  double f = cdf(x);
  double s = cdf_complement(x);
  double d1 = pdf(x);
  double d2 = pdf_deriv(x);
  if (!(f > 0.0) || !(s > 0.0)) return false;
  // F'^2/(F-1) = -F'^2/(1-F); both inequalities strict.
  return -d1 * d1 / s < d2 && d2 < d1 * d1 / f;
}

}  // namespace netgame
