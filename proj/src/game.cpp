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

#include "netgame/game.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace netgame {

std::string SupermodularityViolation::describe(const std::vector<SpilloverViolation>& v) {
  std::ostringstream out;
  out << "supermodularity violated at " << v.size() << " linked pair(s)";
  if (!v.empty()) {
    out << "; first: beta(" << v.front().i << ", " << v.front().j << ") = " << v.front().beta;
  }
  return out.str();
}

Network::Network(int n, const std::vector<std::pair<int, int>>& edges, bool directed)
    : n_(n), directed_(directed), nbrs_(n) {
  if (n < 0) throw ValidationError("network size must be nonnegative");
  for (auto [src, dst] : edges) {
    if (src < 0 || src >= n || dst < 0 || dst >= n)
      throw ValidationError("edge endpoint out of range: " + std::to_string(src) + "," +
                            std::to_string(dst));
    if (src == dst)
      throw ValidationError("self-link not allowed at unit " + std::to_string(src));
    nbrs_[src].push_back(dst);
    if (!directed) nbrs_[dst].push_back(src);
  }
  for (auto& row : nbrs_) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
}

Network Network::from_dense(const std::vector<std::vector<int>>& adjacency, bool directed) {
  int n = static_cast<int>(adjacency.size());
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(adjacency[i].size()) != n)
      throw DimensionMismatch("adjacency matrix is not square");
    for (int j = 0; j < n; ++j) {
      int g = adjacency[i][j];
      if (g != 0 && g != 1)
        throw ValidationError("adjacency entries must be exactly 0 or 1");
      if (i == j && g != 0) throw ValidationError("self-link not allowed at unit " + std::to_string(i));
      if (!directed && adjacency[j][i] != g)
        throw ValidationError("undirected adjacency must be symmetric");
      if (g == 1 && (directed || i < j)) edges.emplace_back(i, j);
    }
  }
  return Network(n, edges, directed);
}

bool Network::has_edge(int i, int j) const {
  const auto& row = nbrs_[i];
  return std::binary_search(row.begin(), row.end(), j);
}

int Network::max_degree() const {
  int m = 0;
  for (const auto& row : nbrs_) m = std::max(m, static_cast<int>(row.size()));
  return m;
}

std::vector<std::pair<int, int>> Network::edge_list() const {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n_; ++i)
    for (int j : nbrs_[i])
      if (directed_ || i < j) edges.emplace_back(i, j);
  return edges;
}

Covariates::Covariates(int n, int k, std::vector<double> row_major)
    : n_(n), k_(k), data_(std::move(row_major)) {
  if (n < 0 || k < 0) throw ValidationError("covariate dimensions must be nonnegative");
  if (data_.size() != static_cast<std::size_t>(n) * k)
    throw DimensionMismatch("covariate storage does not match N x K");
  for (double v : data_) {
    if (!std::isfinite(v)) throw ValidationError("covariates must be finite");
    if (v < 0.0) throw ValidationError("covariates must be nonnegative");
  }
}

std::vector<double> Theta::flatten() const {
  std::vector<double> out;
  out.reserve(dim());
  out.push_back(theta0);
  out.push_back(theta1);
  out.insert(out.end(), theta2.begin(), theta2.end());
  out.insert(out.end(), theta3.begin(), theta3.end());
  out.push_back(theta4);
  out.push_back(theta5);
  out.push_back(theta6);
  return out;
}

Theta Theta::unflatten(std::span<const double> values, int covariate_dim) {
  if (static_cast<int>(values.size()) != 2 * covariate_dim + 5)
    throw DimensionMismatch("flattened theta has wrong length");
  Theta t;
  t.theta0 = values[0];
  t.theta1 = values[1];
  t.theta2.assign(values.begin() + 2, values.begin() + 2 + covariate_dim);
  t.theta3.assign(values.begin() + 2 + covariate_dim, values.begin() + 2 + 2 * covariate_dim);
  t.theta4 = values[2 + 2 * covariate_dim];
  t.theta5 = values[3 + 2 * covariate_dim];
  t.theta6 = values[4 + 2 * covariate_dim];
  return t;
}

void Theta::validate() const {
  if (theta2.size() != theta3.size())
    throw DimensionMismatch("theta2 and theta3 must have equal length");
  for (double v : flatten())
    if (!std::isfinite(v)) throw ValidationError("theta entries must be finite");
}

Allocation Allocation::from_treated(int n, const std::vector<int>& treated, int kappa) {
  Allocation a{std::vector<std::uint8_t>(n, 0), kappa};
  for (int i : treated) {
    if (i < 0 || i >= n) throw ValidationError("treated index out of range");
    a.d[i] = 1;
  }
  a.validate(n);
  return a;
}

int Allocation::treated_count() const {
  int c = 0;
  for (auto v : d) c += v;
  return c;
}

void Allocation::validate(int n) const {
  if (static_cast<int>(d.size()) != n)
    throw DimensionMismatch("allocation length does not match network size");
  for (auto v : d)
    if (v != 0 && v != 1) throw ValidationError("allocation entries must be 0 or 1");
  if (treated_count() > kappa)
    throw ValidationError("allocation exceeds capacity kappa = " + std::to_string(kappa));
}

Game::Game(Network network, Covariates covariates, Theta theta, ShockDistribution shock)
    : network_(std::move(network)),
      covariates_(std::move(covariates)),
      theta_(std::move(theta)),
      shock_(shock) {
  if (covariates_.size() != network_.size())
    throw DimensionMismatch("covariate rows must match network size");
  theta_.validate();
  if (theta_.covariate_dim() != covariates_.dim())
    throw DimensionMismatch("theta2/theta3 length must match covariate dimension");
  sim_.resize(network_.size());
  for (int i = 0; i < network_.size(); ++i) {
    auto nbrs = network_.neighbors(i);
    sim_[i].reserve(nbrs.size());
    for (int j : nbrs) sim_[i].push_back(similarity(covariates_.row(i), covariates_.row(j)));
  }
  bool has_edges = false;
  for (int i = 0; i < network_.size() && !has_edges; ++i) has_edges = network_.degree(i) > 0;
  universally_supermodular_ =
      !has_edges || (theta_.theta5 >= 0.0 && theta_.theta5 + theta_.theta6 >= 0.0);
}

double similarity(std::span<const double> x_i, std::span<const double> x_j) {
  if (x_i.size() != x_j.size())
    throw DimensionMismatch("similarity requires vectors of equal length");
  double dist = 0.0;
  for (std::size_t k = 0; k < x_i.size(); ++k) dist += std::abs(x_i[k] - x_j[k]);
  return 1.0 / (1.0 + dist);
}

double alpha(int i, const Game& game, const Allocation& alloc) {
  const Theta& th = game.theta();
  auto x = game.covariates().row(i);
  double own = th.theta0 + th.theta1 * alloc.d[i];
  for (int k = 0; k < game.covariates().dim(); ++k)
    own += x[k] * (th.theta2[k] + th.theta3[k] * alloc.d[i]);
  auto nbrs = game.network().neighbors(i);
  if (nbrs.empty()) return own;
  auto sims = game.edge_similarity(i);
  double spill = 0.0;
  for (std::size_t k = 0; k < nbrs.size(); ++k) spill += sims[k] * alloc.d[nbrs[k]];
  return own + th.theta4 * spill / static_cast<double>(nbrs.size());
}

double beta(int i, int j, const Game& game, const Allocation& alloc) {
  if (i == j) throw ValidationError("beta requires i != j");
  if (!game.network().has_edge(i, j) || game.network().degree(i) == 0) return 0.0;
  const Theta& th = game.theta();
  double m = similarity(game.covariates().row(i), game.covariates().row(j));
  return (th.theta5 + th.theta6 * alloc.d[i] * alloc.d[j]) * m /
         static_cast<double>(game.network().degree(i));
}

SupermodularityReport check_supermodular(const Game& game, const Allocation& alloc) {
  alloc.validate(game.size());
  SupermodularityReport report;
  const Theta& th = game.theta();
  for (int i = 0; i < game.size(); ++i) {
    auto nbrs = game.network().neighbors(i);
    auto sims = game.edge_similarity(i);
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      int j = nbrs[k];
      double b = (th.theta5 + th.theta6 * alloc.d[i] * alloc.d[j]) * sims[k] /
                 static_cast<double>(nbrs.size());
      if (b < 0.0) {
        report.pass = false;
        report.violations.push_back({i, j, b});
      }
    }
  }
  return report;
}

UtilityTerms build_utility_terms(const Game& game, const Allocation& alloc) {
  alloc.validate(game.size());
  int n = game.size();
  UtilityTerms terms;
  terms.alpha.resize(n);
  terms.beta.resize(n);
  terms.neighbor_ids.resize(n);
  for (int i = 0; i < n; ++i) {
    terms.alpha[i] = alpha(i, game, alloc);
    auto nbrs = game.network().neighbors(i);
    auto sims = game.edge_similarity(i);
    terms.neighbor_ids[i].assign(nbrs.begin(), nbrs.end());
    terms.beta[i].resize(nbrs.size());
    const Theta& th = game.theta();
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      terms.beta[i][k] = (th.theta5 + th.theta6 * alloc.d[i] * alloc.d[nbrs[k]]) * sims[k] /
                         static_cast<double>(nbrs.size());
    }
  }
  return terms;
}

}  // namespace netgame
