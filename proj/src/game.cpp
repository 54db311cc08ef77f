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

#include "rleval/game.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rleval/error.hpp"
#include "rleval/simd/kernels.hpp"

namespace rleval {

StrategySpace::StrategySpace(std::size_t num_algorithms, std::size_t num_environments,
                             double population)
    : num_algorithms_(num_algorithms),
      num_environments_(num_environments),
      population_(population) {
  if (num_algorithms < 2)
    throw InvalidArgument("the evaluation game needs at least two algorithms");
  if (num_environments < 1) throw InvalidArgument("the evaluation game needs an environment");
  if (!(population > 0.0)) throw InvalidArgument("population constant must be positive");
  eta_ = 1.0 / static_cast<double>(num_neighbors());
  gamma_ = static_cast<double>(size() - 1) / static_cast<double>(size());

  const std::size_t nb = num_neighbors();
  neighbor_table_.resize(size() * nb);
  for (std::size_t s = 0; s < size(); ++s) {
    const std::size_t sp = player_p_strategy(s);
    const std::size_t sq = player_q_strategy(s);
    std::size_t* out = neighbor_table_.data() + s * nb;
    for (std::size_t i = 0; i < num_player_p(); ++i)
      if (i != sp) *out++ = i * num_player_q() + sq;
    for (std::size_t q = 0; q < num_player_q(); ++q)
      if (q != sq) *out++ = sp * num_player_q() + q;
  }
}

JointStrategy StrategySpace::decode(std::size_t s) const {
  const std::size_t q = player_q_strategy(s);
  return {player_p_strategy(s), q / num_algorithms_, q % num_algorithms_};
}

StrategySpace build_strategy_space(std::size_t num_algorithms, std::size_t num_environments,
                                   double population) {
  return StrategySpace(num_algorithms, num_environments, population);
}

double MarkovMatrix::max_row_sum_error() const {
  double worst = 0.0;
  for (Eigen::Index r = 0; r < values.rows(); ++r)
    worst = std::max(worst, std::abs(values.row(r).sum() - 1.0));
  return worst;
}

MarkovMatrix build_markov_matrix(const StrategySpace& space, std::span<const double> payoff_p,
                                 double equal_tolerance) {
  if (payoff_p.size() != space.size())
    throw InvalidArgument("payoff vector size does not match the strategy space");
  const auto n = static_cast<Eigen::Index>(space.size());
  MarkovMatrix c{DenseMatrix::Zero(n, n)};
  const double eta = space.eta();
  const double tie = eta / space.population();
  for (std::size_t s = 0; s < space.size(); ++s) {
    const auto nb = space.neighbors(s);
    double off = 0.0;
    for (std::size_t t = 0; t < nb.size(); ++t) {
      const std::size_t to = nb[t];
      // Player q's payoff is the negation of p's.
      double gain = payoff_p[to] - payoff_p[s];
      if (!space.neighbor_is_p_move(t)) gain = -gain;
      double w = 0.0;
      if (std::abs(gain) <= equal_tolerance) {
        w = tie;
      } else if (gain > 0.0) {
        w = eta;
      }
      c.values(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(to)) = w;
      off += w;
    }
    c.values(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s)) = 1.0 - off;
  }
  return c;
}

MarkovMatrix build_markov_matrix(const StrategySpace& space,
                                 const std::function<double(const JointStrategy&)>& payoff_p,
                                 double equal_tolerance) {
  std::vector<double> u(space.size());
  for (std::size_t s = 0; s < space.size(); ++s) u[s] = payoff_p(space.decode(s));
  return build_markov_matrix(space, u, equal_tolerance);
}

MarkovMatrix dampen(const MarkovMatrix& chain, double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw InvalidArgument("damping factor must lie in (0, 1), got " + std::to_string(gamma));
  const double jump = (1.0 - gamma) / static_cast<double>(chain.size());
  MarkovMatrix out{chain.values * gamma};
  out.values.array() += jump;
  return out;
}

namespace {

// out = d * P, accumulated row by row in ascending order.
void left_multiply(const DenseMatrix& p, const std::vector<double>& d, std::vector<double>& out) {
  const std::size_t n = d.size();
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t s = 0; s < n; ++s)
    simd::axpy(d[s], p.data() + s * n, out.data(), n);
}

void normalize(std::vector<double>& d) {
  double total = 0.0;
  for (double v : d) total += v;
  for (double& v : d) v /= total;
}

}  // namespace

std::vector<double> stationary_distribution(const MarkovMatrix& damped,
                                            const StationaryOptions& options) {
  const std::size_t n = damped.size();
  if (n == 0) throw InvalidArgument("empty Markov matrix");
  if (damped.values.minCoeff() <= 0.0)
    throw InvalidArgument("stationary distribution needs a strictly positive (damped) matrix");

  std::vector<double> d(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);
  auto residual = [&]() {
    left_multiply(damped.values, d, next);
    return simd::max_abs_diff(d.data(), next.data(), n);
  };

  if (n <= options.dense_limit) {
    // (P^T - I) d = 0 with the last equation replaced by sum d = 1.
    DenseMatrix a = damped.values.transpose();
    a.diagonal().array() -= 1.0;
    a.row(a.rows() - 1).setOnes();
    DenseVector rhs = DenseVector::Zero(static_cast<Eigen::Index>(n));
    rhs(rhs.size() - 1) = 1.0;
    const DenseVector x = a.partialPivLu().solve(rhs);
    for (std::size_t s = 0; s < n; ++s) d[s] = std::max(0.0, x(static_cast<Eigen::Index>(s)));
    normalize(d);
  }

  const std::size_t cap = std::max<std::size_t>(1, options.sweeps_per_state * n);
  double r = residual();
  for (std::size_t sweep = 0; sweep < cap && r > options.tolerance; ++sweep) {
    d.swap(next);
    normalize(d);
    r = residual();
  }
  if (!(r <= options.tolerance))
    throw ConvergenceError("stationary distribution did not converge", r);
  return d;
}

DenseMatrix discounted_values(const MarkovMatrix& chain, double gamma, const DenseMatrix& rewards) {
  const auto n = static_cast<Eigen::Index>(chain.size());
  if (rewards.rows() != n) throw InvalidArgument("reward rows must match the chain size");
  DenseMatrix a = -gamma * chain.values;
  a.diagonal().array() += 1.0;
  return a.partialPivLu().solve(rewards);
}

void marginals(const StrategySpace& space, std::span<const double> d, std::vector<double>& p_star,
               std::vector<double>& q_star) {
  p_star.assign(space.num_player_p(), 0.0);
  q_star.assign(space.num_player_q(), 0.0);
  for (std::size_t s = 0; s < space.size(); ++s) {
    p_star[space.player_p_strategy(s)] += d[s];
    q_star[space.player_q_strategy(s)] += d[s];
  }
}

std::vector<double> aggregate_scores(const StrategySpace& space, std::span<const double> d,
                                     const NormalizedBoundMatrix& z) {
  if (d.size() != space.size()) throw InvalidArgument("distribution size mismatch");
  std::vector<double> p_star, q_star;
  marginals(space, d, p_star, q_star);
  const std::size_t A = space.num_algorithms();
  std::vector<double> y(A, 0.0);
  for (std::size_t i = 0; i < A; ++i)
    y[i] = simd::dot(q_star.data(), z.point().data() + space.index(i, 0, 0), space.num_player_q());
  return y;
}

std::vector<double> aggregate_scores_value_form(const StrategySpace& space, const MarkovMatrix& chain,
                                                double gamma, const NormalizedBoundMatrix& z) {
  const std::size_t A = space.num_algorithms();
  const std::size_t Q = space.num_player_q();
  const auto n = static_cast<Eigen::Index>(space.size());
  DenseMatrix rewards(n, static_cast<Eigen::Index>(A));
  for (std::size_t s = 0; s < space.size(); ++s) {
    const std::size_t q = space.player_q_strategy(s);
    for (std::size_t i = 0; i < A; ++i)
      rewards(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(i)) = z.point()[i * Q + q];
  }
  const DenseMatrix v = discounted_values(chain, gamma, rewards);
  std::vector<double> y(A);
  for (std::size_t i = 0; i < A; ++i)
    y[i] = (1.0 - gamma) / static_cast<double>(n) * v.col(static_cast<Eigen::Index>(i)).sum();
  return y;
}

GameSolution solve_game(const StrategySpace& space, const NormalizedBoundMatrix& z,
                        const StationaryOptions& options) {
  if (z.num_algorithms() != space.num_algorithms() ||
      z.num_environments() != space.num_environments())
    throw InvalidArgument("normalized matrix does not match the strategy space");
  const MarkovMatrix c = build_markov_matrix(space, z.point());
  GameSolution sol;
  sol.d = stationary_distribution(dampen(c, space.gamma()), options);
  marginals(space, sol.d, sol.p_star, sol.q_star);
  sol.y = aggregate_scores(space, sol.d, z);
  return sol;
}

}  // namespace rleval
