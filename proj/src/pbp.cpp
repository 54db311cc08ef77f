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

#include "rleval/pbp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rleval/error.hpp"
#include "rleval/simd/kernels.hpp"

namespace rleval {

MatrixBoundPair::MatrixBoundPair(const StrategySpace& space)
    : size_(space.size()),
      width_(space.num_neighbors() + 1),
      columns_(size_ * width_),
      lower_(size_ * width_, 0.0),
      upper_(size_ * width_, 0.0) {
  for (std::size_t s = 0; s < size_; ++s) {
    std::size_t* cols = columns_.data() + s * width_;
    cols[0] = s;
    const auto nb = space.neighbors(s);
    std::copy(nb.begin(), nb.end(), cols + 1);
  }
}

namespace {

DenseMatrix to_dense(const MatrixBoundPair& b, const std::vector<double>& values) {
  const auto n = static_cast<Eigen::Index>(b.size());
  DenseMatrix m = DenseMatrix::Zero(n, n);
  for (std::size_t s = 0; s < b.size(); ++s) {
    const auto cols = b.columns(s);
    for (std::size_t t = 0; t < cols.size(); ++t)
      m(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(cols[t])) =
          values[s * b.row_width() + t];
  }
  return m;
}

}  // namespace

DenseMatrix MatrixBoundPair::dense_lower() const { return to_dense(*this, lower_); }
DenseMatrix MatrixBoundPair::dense_upper() const { return to_dense(*this, upper_); }

MatrixBoundPair bound_markov_matrix(const StrategySpace& space, const NormalizedBoundMatrix& z) {
  if (z.num_algorithms() != space.num_algorithms() ||
      z.num_environments() != space.num_environments())
    throw InvalidArgument("bound matrix does not match the strategy space");
  MatrixBoundPair out(space);
  const double eta = space.eta();
  const double tie = eta / space.population();
  const auto zl = z.lower();
  const auto zu = z.upper();
  for (std::size_t s = 0; s < space.size(); ++s) {
    auto lo = out.lower_row(s);
    auto hi = out.upper_row(s);
    const auto nb = space.neighbors(s);
    double sum_lo = 0.0;
    double sum_hi = 0.0;
    for (std::size_t t = 0; t < nb.size(); ++t) {
      const std::size_t to = nb[t];
      double from_lo = zl[s], from_hi = zu[s], to_lo = zl[to], to_hi = zu[to];
      if (!space.neighbor_is_p_move(t)) {
        // q's payoff interval is the negated, swapped interval of p.
        from_lo = -zu[s];
        from_hi = -zl[s];
        to_lo = -zu[to];
        to_hi = -zl[to];
      }
      double l = 0.0, u = eta;
      if (to_lo > from_hi) {
        l = u = eta;
      } else if (from_lo > to_hi) {
        l = u = 0.0;
      } else if (from_lo == from_hi && to_lo == to_hi && from_lo == to_lo) {
        l = u = tie;
      }
      lo[t + 1] = l;
      hi[t + 1] = u;
      sum_lo += l;
      sum_hi += u;
    }
    lo[0] = 1.0 - sum_hi;
    hi[0] = 1.0 - sum_lo;
  }
  return out;
}

void update_transition_row(std::span<const double> lower, std::span<const double> upper, double r,
                           std::span<const double> v, double gamma, std::span<double> out) {
  const std::size_t n = lower.size();
  if (upper.size() != n || v.size() != n || out.size() != n)
    throw InvalidArgument("transition row spans must have equal length");
  const double sum_lo = std::accumulate(lower.begin(), lower.end(), 0.0);
  const double sum_hi = std::accumulate(upper.begin(), upper.end(), 0.0);
  constexpr double kSlack = 1e-12;
  if (sum_lo > 1.0 + kSlack || sum_hi < 1.0 - kSlack)
    throw InvalidArgument("transition row bounds admit no stochastic row");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> w(n);
  for (std::size_t t = 0; t < n; ++t) w[t] = r + gamma * v[t];
  std::stable_sort(order.begin(), order.end(),
                   [&w](std::size_t a, std::size_t b) { return w[a] > w[b]; });

  std::copy(lower.begin(), lower.end(), out.begin());
  double c = sum_lo;
  for (std::size_t idx : order) {
    const double dc = std::max(0.0, std::min(upper[idx] - lower[idx], 1.0 - c));
    out[idx] += dc;
    c += dc;
  }
}

std::vector<double> update_transition_row(std::span<const double> lower,
                                          std::span<const double> upper, double r,
                                          std::span<const double> v, double gamma) {
  std::vector<double> out(lower.size());
  update_transition_row(lower, upper, r, v, gamma, out);
  return out;
}

namespace {

// v = (I - gamma C)^{-1} R for C given in the sparse row layout.
void solve_values(const MatrixBoundPair& layout, const std::vector<double>& c,
                  std::span<const double> rewards, double gamma, std::size_t dense_limit,
                  std::vector<double>& v) {
  const std::size_t n = layout.size();
  const std::size_t width = layout.row_width();
  if (n <= dense_limit) {
    const auto ni = static_cast<Eigen::Index>(n);
    DenseMatrix a = DenseMatrix::Identity(ni, ni);
    for (std::size_t s = 0; s < n; ++s) {
      const auto cols = layout.columns(s);
      for (std::size_t t = 0; t < width; ++t)
        a(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(cols[t])) -=
            gamma * c[s * width + t];
    }
    const DenseVector rhs = Eigen::Map<const DenseVector>(rewards.data(), ni);
    const DenseVector x = a.partialPivLu().solve(rhs);
    v.assign(x.data(), x.data() + n);
    return;
  }
  // Gauss-Seidel in ascending strategy order; deterministic, and a
  // gamma-contraction so it always converges.
  v.assign(n, 0.0);
  const std::size_t cap = 1000 * n;
  for (std::size_t sweep = 0; sweep < cap; ++sweep) {
    double change = 0.0;
    double scale = 1.0;
    for (std::size_t s = 0; s < n; ++s) {
      const auto cols = layout.columns(s);
      const double* row = c.data() + s * width;
      double acc = rewards[s];
      for (std::size_t t = 1; t < width; ++t) acc += gamma * row[t] * v[cols[t]];
      const double next = acc / (1.0 - gamma * row[0]);
      change = std::max(change, std::abs(next - v[s]));
      scale = std::max(scale, std::abs(next));
      v[s] = next;
    }
    if (change <= 1e-15 * scale) return;
  }
  throw ConvergenceError("value solve did not converge", 0.0);
}

}  // namespace

OptimizationResult policy_iteration_optimize(const MatrixBoundPair& bounds,
                                             std::span<const double> rewards, double gamma,
                                             const PolicyIterationOptions& options) {
  const std::size_t n = bounds.size();
  const std::size_t width = bounds.row_width();
  if (rewards.size() != n) throw InvalidArgument("reward vector size mismatch");
  if (!(gamma > 0.0 && gamma < 1.0)) throw InvalidArgument("gamma must lie in (0, 1)");

  std::vector<double> c(n * width);
  for (std::size_t s = 0; s < n; ++s) {
    const auto lo = bounds.lower_row(s);
    std::copy(lo.begin(), lo.end(), c.begin() + static_cast<std::ptrdiff_t>(s * width));
  }
  std::vector<double> v(n, 0.0);
  std::vector<double> v_next;
  std::vector<double> v_cols(width);
  std::vector<double> row(width);

  OptimizationResult result;
  bool changed = true;
  bool hit_cap = false;
  int iteration = 0;
  while (changed) {
    changed = false;
    ++iteration;
    if (iteration >= options.max_iterations) {
      hit_cap = true;
      break;
    }
    for (std::size_t s = 0; s < n; ++s) {
      const auto cols = bounds.columns(s);
      for (std::size_t t = 0; t < width; ++t) v_cols[t] = v[cols[t]];
      update_transition_row(bounds.lower_row(s), bounds.upper_row(s), rewards[s], v_cols, gamma,
                            row);
      double* current = c.data() + s * width;
      if (simd::max_abs_diff(current, row.data(), width) >= options.row_change) {
        changed = true;
        std::copy(row.begin(), row.end(), current);
      }
    }
    solve_values(bounds, c, rewards, gamma, options.dense_limit, v_next);
    const double eps = simd::max_abs_diff(v.data(), v_next.data(), n);
    const double eps_v_star = (2.0 * eps * gamma) / (1.0 - gamma);
    result.eps_aggregate = (1.0 - gamma) * eps_v_star;
    if (result.eps_aggregate < options.tolerance) changed = false;
    v.swap(v_next);
  }
  result.iterations = iteration;
  result.converged = !hit_cap;
  double total = 0.0;
  for (double x : v) total += std::abs(x);
  result.value = (1.0 - gamma) * total / static_cast<double>(n);
  return result;
}

bool AggregateIntervals::converged() const {
  auto ok = [](const OptimizationResult& r) { return r.converged; };
  return std::all_of(lower_runs.begin(), lower_runs.end(), ok) &&
         std::all_of(upper_runs.begin(), upper_runs.end(), ok);
}

int AggregateIntervals::max_iterations_used() const {
  int m = 0;
  for (const auto& r : lower_runs) m = std::max(m, r.iterations);
  for (const auto& r : upper_runs) m = std::max(m, r.iterations);
  return m;
}

AggregateIntervals propagate_bounds(const StrategySpace& space, const NormalizedBoundMatrix& z,
                                    double delta, const PolicyIterationOptions& options) {
  const MatrixBoundPair bounds = bound_markov_matrix(space, z);
  const double gamma = space.gamma();
  const std::size_t A = space.num_algorithms();
  const std::size_t Q = space.num_player_q();

  AggregateIntervals out;
  out.delta = delta;
  out.gamma = gamma;
  out.tolerance = options.tolerance;
  out.lower.resize(A);
  out.upper.resize(A);
  std::vector<double> rewards(space.size());
  for (std::size_t i = 0; i < A; ++i) {
    for (std::size_t s = 0; s < space.size(); ++s)
      rewards[s] = -z.lower()[i * Q + space.player_q_strategy(s)];
    const OptimizationResult lo = policy_iteration_optimize(bounds, rewards, gamma, options);
    for (std::size_t s = 0; s < space.size(); ++s)
      rewards[s] = z.upper()[i * Q + space.player_q_strategy(s)];
    const OptimizationResult hi = policy_iteration_optimize(bounds, rewards, gamma, options);
    out.lower[i] = std::clamp(lo.value, 0.0, 1.0);
    out.upper[i] = std::clamp(hi.value, 0.0, 1.0);
    out.lower_runs.push_back(lo);
    out.upper_runs.push_back(hi);
  }
  return out;
}

AggregateIntervals pbp(const PerformanceDataset& dataset, double delta,
                       const PolicyIterationOptions& options) {
  if (!dataset.complete(2))
    throw InvalidArgument("PBP needs at least two samples for every (algorithm, environment) pair");
  const NormalizedBoundMatrix z = normalized_bounds_matrix(dataset, delta);
  const StrategySpace space(dataset.num_algorithms(), dataset.num_environments());
  return propagate_bounds(space, z, delta, options);
}

}  // namespace rleval
