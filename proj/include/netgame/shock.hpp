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

#ifndef NETGAME_SHOCK_HPP_
#define NETGAME_SHOCK_HPP_

#include <string>

namespace netgame {

enum class ShockKind { logistic, gaussian };

ShockKind shock_kind_from_string(const std::string& name);
std::string to_string(ShockKind kind);

// Distribution of the private utility shock. Both supported families have a
// bounded density and satisfy the shape condition
//   F'(x)^2 / (F(x) - 1)  <  F''(x)  <  F'(x)^2 / F(x)
// pointwise, which makes the quasi-likelihood strictly concave.
class ShockDistribution {
 public:
  explicit ShockDistribution(ShockKind kind) : kind_(kind) {}

  ShockKind kind() const { return kind_; }

  double cdf(double x) const;
  // Complement 1 - F(x), computed without cancellation in the tails.
  double cdf_complement(double x) const;
  double pdf(double x) const;
  // F''(x), the derivative of the density.
  double pdf_deriv(double x) const;
  // Inverse CDF; |cdf(quantile(p)) - p| stays below 1e-12 on (0, 1).
  double quantile(double p) const;
  // Analytic maximum of the density: 1/4 (logistic), 1/sqrt(2*pi) (gaussian).
  double density_bound() const;

  // Curvature weights of the log-likelihood cells log F and log(1 - F):
  //   omega0(a) = (F'' F - F'^2) / F^2      (< 0 under the shape condition)
  //   omega1(a) = (F'' (1-F) + F'^2) / (1-F)^2   (> 0)
  double omega0(double a) const;
  double omega1(double a) const;

  // Strict shape-condition check at one point.
  bool shape_condition_holds(double x) const;

 private:
  ShockKind kind_;
};

}  // namespace netgame

#endif  // NETGAME_SHOCK_HPP_
