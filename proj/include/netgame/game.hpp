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

#ifndef NETGAME_GAME_HPP_
#define NETGAME_GAME_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "netgame/errors.hpp"
#include "netgame/shock.hpp"

namespace netgame {

// Simple binary network, no self-links. Rows index the unit whose payoff the
// link feeds: j is a neighbor of i iff G(i,j) = 1. Undirected networks are
// stored symmetrized.
class Network {
 public:
  Network(int n, const std::vector<std::pair<int, int>>& edges, bool directed);
  static Network from_dense(const std::vector<std::vector<int>>& adjacency, bool directed);

  int size() const { return n_; }
  bool directed() const { return directed_; }
  // Out-neighborhood of i, sorted ascending.
  std::span<const int> neighbors(int i) const { return {nbrs_[i].data(), nbrs_[i].size()}; }
  int degree(int i) const { return static_cast<int>(nbrs_[i].size()); }
  bool has_edge(int i, int j) const;
  int max_degree() const;
  std::vector<std::pair<int, int>> edge_list() const;

 private:
  Network() = default;
  int n_ = 0;
  bool directed_ = false;
  std::vector<std::vector<int>> nbrs_;
};

// N x K matrix of nonnegative, finite unit characteristics.
class Covariates {
 public:
  Covariates(int n, int k, std::vector<double> row_major);

  int size() const { return n_; }
  int dim() const { return k_; }
  std::span<const double> row(int i) const { return {data_.data() + static_cast<std::size_t>(i) * k_, static_cast<std::size_t>(k_)}; }
  double at(int i, int k) const { return data_[static_cast<std::size_t>(i) * k_ + k]; }

 private:
  int n_;
  int k_;
  std::vector<double> data_;
};

// Structural utility parameters. Flattened order matches the regressor
// layout used in estimation: (theta0, theta1, theta2, theta3, theta4,
// theta5, theta6), 2K + 5 scalars in total.
struct Theta {
  double theta0 = 0.0;
  double theta1 = 0.0;
  std::vector<double> theta2;
  std::vector<double> theta3;
  double theta4 = 0.0;
  double theta5 = 0.0;
  double theta6 = 0.0;

  int covariate_dim() const { return static_cast<int>(theta2.size()); }
  int dim() const { return 2 * covariate_dim() + 5; }
  std::vector<double> flatten() const;
  static Theta unflatten(std::span<const double> values, int covariate_dim);
  void validate() const;
};

// Binary treatment vector with its capacity bound.
struct Allocation {
  std::vector<std::uint8_t> d;
  int kappa = 0;

  static Allocation none(int n) { return Allocation{std::vector<std::uint8_t>(n, 0), 0}; }
  static Allocation from_treated(int n, const std::vector<int>& treated, int kappa);
  int treated_count() const;
  void validate(int n) const;
};

// Immutable game environment: network, covariates, parameters, shock law.
// Pairwise similarities along edges are precomputed at construction; all
// member queries are pure and safe for concurrent use.
class Game {
 public:
  Game(Network network, Covariates covariates, Theta theta, ShockDistribution shock);

  const Network& network() const { return network_; }
  const Covariates& covariates() const { return covariates_; }
  const Theta& theta() const { return theta_; }
  const ShockDistribution& shock() const { return shock_; }
  int size() const { return network_.size(); }

  // Similarities aligned with network().neighbors(i).
  std::span<const double> edge_similarity(int i) const {
    return {sim_[i].data(), sim_[i].size()};
  }

  // theta5 >= 0 and theta5 + theta6 >= 0, so every allocation yields a
  // supermodular game (vacuously true when the network has no edges).
  bool supermodular_for_all_allocations() const { return universally_supermodular_; }

 private:
  Network network_;
  Covariates covariates_;
  Theta theta_;
  ShockDistribution shock_;
  std::vector<std::vector<double>> sim_;
  bool universally_supermodular_;
};

// m(x_i, x_j) = 1 / (1 + ||x_i - x_j||_1), in (0, 1].
double similarity(std::span<const double> x_i, std::span<const double> x_j);

// Individual utility index of Eq-style parametrization:
// theta0 + theta1 D_i + X_i'theta2 + X_i'theta3 D_i
//   + (theta4/|N_i|) sum_j m_ij G_ij D_j.
// Neighbor-averaged terms are zero for isolated units.
double alpha(int i, const Game& game, const Allocation& alloc);

// Spillover coefficient (theta5 + theta6 D_i D_j) m_ij G_ij / |N_i|.
double beta(int i, int j, const Game& game, const Allocation& alloc);

struct SupermodularityReport {
  bool pass = true;
  std::vector<SpilloverViolation> violations;
};

// Checks beta(i, j) >= 0 on every ordered linked pair under this allocation.
SupermodularityReport check_supermodular(const Game& game, const Allocation& alloc);

// alpha and per-edge beta for one allocation, laid out for the solver loops.
// beta[i][k] is the spillover coefficient from neighbor_ids[i][k] to i.
struct UtilityTerms {
  std::vector<double> alpha;
  std::vector<std::vector<double>> beta;
  std::vector<std::vector<int>> neighbor_ids;

  int size() const { return static_cast<int>(alpha.size()); }
};

UtilityTerms build_utility_terms(const Game& game, const Allocation& alloc);

}  // namespace netgame

#endif  // NETGAME_GAME_HPP_
