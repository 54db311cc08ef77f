// Copyright 2026 The rleval Authors.
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

#pragma once

// The two-player zero-sum evaluation game. Player p picks an algorithm i,
// player q picks an (environment j, reference algorithm k) pair and p earns
// u_p(i, (j, k)) = E[F_{k,j}(X_{i,j})]. The equilibrium is the stationary
// distribution of a damped single-deviation Markov chain over joint
// strategies, and q's marginal weights the aggregate score of each algorithm.

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "rleval/distribution_stats.hpp"

namespace rleval {

using DenseMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using DenseVector = Eigen::VectorXd;

// Population constant scaling equal-payoff transitions.
inline constexpr double kDefaultPopulation = 50.0;

struct JointStrategy {
  std::size_t algorithm;
  std::size_t environment;
  std::size_t reference;
  bool operator==(const JointStrategy&) const = default;
};

// S = S_1 x S_2 with S_1 = algorithms and S_2 = environments x algorithms.
// Joint index s = i * (M * A) + j * A + k, the same layout as
// NormalizedBoundMatrix.
class StrategySpace {
 public:
  // Throws InvalidArgument for fewer than two algorithms or no environment.
  StrategySpace(std::size_t num_algorithms, std::size_t num_environments,
                double population = kDefaultPopulation);

  std::size_t num_algorithms() const { return num_algorithms_; }
  std::size_t num_environments() const { return num_environments_; }
  std::size_t num_player_p() const { return num_algorithms_; }
  std::size_t num_player_q() const { return num_environments_ * num_algorithms_; }
  std::size_t size() const { return num_player_p() * num_player_q(); }

  // eta = 1 / ((|S_1| - 1) + (|S_2| - 1)), the weight of an improving move.
  double eta() const { return eta_; }
  double population() const { return population_; }
  // Default damping (|S| - 1) / |S|.
  double gamma() const { return gamma_; }

  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const {
    return i * num_player_q() + j * num_algorithms_ + k;
  }
  std::size_t index(const JointStrategy& s) const {
    return index(s.algorithm, s.environment, s.reference);
  }
  JointStrategy decode(std::size_t s) const;
  std::size_t player_p_strategy(std::size_t s) const { return s / num_player_q(); }
  std::size_t player_q_strategy(std::size_t s) const { return s % num_player_q(); }

  // Strategies reachable by a single-player deviation. The first |S_1| - 1
  // come from p changing algorithm (ascending), the rest from q changing its
  // (environment, reference) pair (ascending).
  std::size_t num_neighbors() const { return num_player_p() - 1 + num_player_q() - 1; }
  std::span<const std::size_t> neighbors(std::size_t s) const {
    return {neighbor_table_.data() + s * num_neighbors(), num_neighbors()};
  }
  // True when the t-th neighbor of any strategy is a move by player p.
  bool neighbor_is_p_move(std::size_t t) const { return t + 1 < num_player_p(); }

 private:
  std::size_t num_algorithms_;
  std::size_t num_environments_;
  double population_;
  double eta_;
  double gamma_;
  std::vector<std::size_t> neighbor_table_;
};

StrategySpace build_strategy_space(std::size_t num_algorithms, std::size_t num_environments,
                                   double population = kDefaultPopulation);

// Row-stochastic matrix over joint strategies.
struct MarkovMatrix {
  DenseMatrix values;

  std::size_t size() const { return static_cast<std::size_t>(values.rows()); }
  double operator()(std::size_t s, std::size_t t) const {
    return values(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t));
  }
  // max_s |sum_t C(s, t) - 1|
  double max_row_sum_error() const;
};

// Transition weight from s to a neighbor s' given the deviating player's
// payoffs at both: eta if the move improves, eta / n if it ties, else 0.
// `equal_tolerance` widens the tie test for payoffs known only up to rounding;
// the default 0 is exact equality.
MarkovMatrix build_markov_matrix(const StrategySpace& space, std::span<const double> payoff_p,
                                 double equal_tolerance = 0.0);
MarkovMatrix build_markov_matrix(const StrategySpace& space,
                                 const std::function<double(const JointStrategy&)>& payoff_p,
                                 double equal_tolerance = 0.0);

// gamma * C + (1 - gamma) / |S|. Throws InvalidArgument unless gamma in (0, 1).
MarkovMatrix dampen(const MarkovMatrix& chain, double gamma);

struct StationaryOptions {
  double tolerance = 1e-12;
  // Dense solve up to this size, power iteration above.
  std::size_t dense_limit = 2000;
  // Power-iteration sweep cap is sweeps_per_state * |S|.
  std::size_t sweeps_per_state = 100;
};

// d with d = d * P, sum d = 1 for a strictly positive row-stochastic P.
// Throws ConvergenceError when the residual ||d - dP||_inf stays above the
// tolerance.
std::vector<double> stationary_distribution(const MarkovMatrix& damped,
                                            const StationaryOptions& options = {});

// v = (I - gamma C)^{-1} R for every column R of `rewards`.
DenseMatrix discounted_values(const MarkovMatrix& chain, double gamma, const DenseMatrix& rewards);

struct GameSolution {
  std::vector<double> d;       // over joint strategies
  std::vector<double> p_star;  // over algorithms
  std::vector<double> q_star;  // over (environment, reference) pairs, index j * A + k
  std::vector<double> y;       // aggregate score per algorithm
};

// Marginals of d over the two players.
void marginals(const StrategySpace& space, std::span<const double> d, std::vector<double>& p_star,
               std::vector<double>& q_star);

// y_i = sum_{j,k} q*_{j,k} zhat_{i,j,k}
std::vector<double> aggregate_scores(const StrategySpace& space, std::span<const double> d,
                                     const NormalizedBoundMatrix& z);

// y_i = (1 - gamma) / |S| * sum_s v(s), v = (I - gamma C)^{-1} R_i with
// R_i(s) = zhat_{i,j,k} for s = (., (j, k)).
std::vector<double> aggregate_scores_value_form(const StrategySpace& space, const MarkovMatrix& chain,
                                                double gamma, const NormalizedBoundMatrix& z);

// Builds C from the point estimates, damps it with space.gamma(), and returns
// the stationary distribution, marginals and q*-weighted scores.
GameSolution solve_game(const StrategySpace& space, const NormalizedBoundMatrix& z,
                        const StationaryOptions& options = {});

}  // namespace rleval
