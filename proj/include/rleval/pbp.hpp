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

// Performance bound propagation: confidence intervals on the aggregate score
// of every algorithm, obtained by optimizing the value-function form of the
// aggregate over every Markov matrix compatible with the bounds on the mean
// normalized performance.

#include <cstddef>
#include <span>
#include <vector>

#include "rleval/distribution_stats.hpp"
#include "rleval/game.hpp"
#include "rleval/perf_data.hpp"

namespace rleval {

// Elementwise bounds C^- <= C <= C^+ on the transition matrix, stored per row
// in the game's sparse layout: slot 0 is the diagonal, slots 1.. follow
// StrategySpace::neighbors(s). All other entries are zero in both bounds.
class MatrixBoundPair {
 public:
  explicit MatrixBoundPair(const StrategySpace& space);

  std::size_t size() const { return size_; }
  std::size_t row_width() const { return width_; }

  std::span<double> lower_row(std::size_t s) { return {lower_.data() + s * width_, width_}; }
  std::span<double> upper_row(std::size_t s) { return {upper_.data() + s * width_, width_}; }
  std::span<const double> lower_row(std::size_t s) const {
    return {lower_.data() + s * width_, width_};
  }
  std::span<const double> upper_row(std::size_t s) const {
    return {upper_.data() + s * width_, width_};
  }
  // Column index of every slot of row s.
  std::span<const std::size_t> columns(std::size_t s) const {
    return {columns_.data() + s * width_, width_};
  }

  DenseMatrix dense_lower() const;
  DenseMatrix dense_upper() const;

 private:
  std::size_t size_;
  std::size_t width_;
  std::vector<std::size_t> columns_;
  std::vector<double> lower_;
  std::vector<double> upper_;
};

// Per transition, with u^-/u^+ the deviating player's payoff bounds:
//   (eta, eta)     if u^-(s') > u^+(s)
//   (0, 0)         if u^-(s) > u^+(s')
//   (eta/n, eta/n) if both intervals are the same single point
//   (0, eta)       otherwise
// and the diagonal gets (1 - sum C^+, 1 - sum C^-). Player p's bounds at
// (i, (j, k)) are (Z^-, Z^+); player q's are (-Z^+, -Z^-).
MatrixBoundPair bound_markov_matrix(const StrategySpace& space, const NormalizedBoundMatrix& z);

// Row maximizing r + gamma * C_s . v over {lower <= C_s <= upper, sum = 1}:
// start from `lower` and fill the remaining unit budget greedily in
// decreasing order of r + gamma * v (ties by ascending slot). `v` holds the
// value at each slot's column. Throws InvalidArgument when the polytope is
// empty (sum lower > 1 or sum upper < 1).
void update_transition_row(std::span<const double> lower, std::span<const double> upper, double r,
                           std::span<const double> v, double gamma, std::span<double> out);
std::vector<double> update_transition_row(std::span<const double> lower,
                                          std::span<const double> upper, double r,
                                          std::span<const double> v, double gamma);

struct PolicyIterationOptions {
  double tolerance = 1e-7;
  int max_iterations = 400;
  // Rows that move less than this (sup norm) are left unchanged.
  double row_change = 1e-8;
  // Dense LU for the value solve up to this many strategies; Gauss-Seidel above.
  std::size_t dense_limit = 2000;
};

struct OptimizationResult {
  double value = 0.0;  // (1 - gamma) * mean |v|
  bool converged = false;
  int iterations = 0;
  double eps_aggregate = 0.0;  // last 2 * eps * gamma
};

// Maximizes sum_s v(s), v = (I - gamma C)^{-1} R, over C within `bounds` by
// policy iteration with greedy row updates and exact value solves. Returns
// (1 - gamma) * mean |v| at exit. `converged` is false when the iteration cap
// was hit before either C stabilized or 2 eps gamma dropped below tolerance.
OptimizationResult policy_iteration_optimize(const MatrixBoundPair& bounds,
                                             std::span<const double> rewards, double gamma,
                                             const PolicyIterationOptions& options = {});

struct AggregateIntervals {
  std::vector<double> lower;
  std::vector<double> upper;
  double delta = 0.0;
  double gamma = 0.0;
  double tolerance = 0.0;
  std::vector<OptimizationResult> lower_runs;
  std::vector<OptimizationResult> upper_runs;

  bool converged() const;
  int max_iterations_used() const;
};

// Interval propagation for any bound matrix Z (Anderson, Student-t...).
// Per algorithm i the lower bound maximizes with R = -Z^-_{i,.,.} and the
// upper with R = Z^+_{i,.,.}; both are clipped to [0, 1].
AggregateIntervals propagate_bounds(const StrategySpace& space, const NormalizedBoundMatrix& z,
                                    double delta, const PolicyIterationOptions& options = {});

// Full PBP: DKW bands at delta / (|A| |M|), Anderson bounds on z, then
// propagate_bounds. Requires at least two samples per pair.
AggregateIntervals pbp(const PerformanceDataset& dataset, double delta,
                       const PolicyIterationOptions& options = {});

}  // namespace rleval
