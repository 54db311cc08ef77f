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


#include "rleval/alt_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/distributions/students_t.hpp>

#include "rleval/error.hpp"
#include "rleval/game.hpp"
#include "rleval/rng.hpp"

namespace rleval {

double t_quantile(double p, double nu) {
  if (!(p > 0.0 && p < 1.0))
    throw InvalidArgument("t quantile level must lie in (0, 1), got " + std::to_string(p));
  if (!(nu >= 1.0)) throw InvalidArgument("t distribution needs at least one degree of freedom");
  if (p == 0.5) return 0.0;
  const boost::math::students_t_distribution<double> dist(nu);
  return boost::math::quantile(dist, p);
}

namespace {

TInterval make_interval(double mean, double stddev, std::size_t n, double delta_prime) {
  TInterval out{mean, stddev, mean, mean};
  if (stddev > 0.0) {
    const double half = stddev / std::sqrt(static_cast<double>(n)) *
                        t_quantile(1.0 - delta_prime, static_cast<double>(n - 1));
    out.lower = mean - half;
    out.upper = mean + half;
  }
  out.lower = std::clamp(out.lower, 0.0, 1.0);
  out.upper = std::clamp(out.upper, 0.0, 1.0);
  return out;
}

}  // namespace

TInterval t_interval(std::span<const double> values, double delta_prime) {
  const std::size_t n = values.size();
  if (n < 2) throw InvalidArgument("t interval needs at least two values");
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return make_interval(mean, std::sqrt(ss / static_cast<double>(n - 1)), n, delta_prime);
}

NormalizedBoundMatrix normalized_t_bounds(const PerformanceDataset& dataset, double delta) {
  const std::size_t A = dataset.num_algorithms();
  const std::size_t M = dataset.num_environments();
  const double delta_prime = per_pair_delta(delta, A, M);
  if (!dataset.complete(2))
    throw InvalidArgument("t bounds need at least two samples for every (algorithm, environment) pair");

  NormalizedBoundMatrix z(A, M);
  for (std::size_t i = 0; i < A; ++i) {
    for (std::size_t j = 0; j < M; ++j) {
      const auto& x = dataset.values(i, j);
      const auto n = static_cast<__int128>(x.size());
      for (std::size_t k = 0; k < A; ++k) {
        const auto& ref = dataset.values(k, j);
        // z_t = c_t / T_k with integer counts c_t, so the moments are exact
        // integers and zero variance is detected exactly.
        __int128 s1 = 0, s2 = 0;
        std::size_t r = 0;
        for (double v : x) {
          while (r < ref.size() && ref[r] <= v) ++r;
          s1 += r;
          s2 += static_cast<__int128>(r) * r;
        }
        const double tk = static_cast<double>(ref.size());
        const double dn = static_cast<double>(x.size());
        const double mean = static_cast<double>(s1) / (dn * tk);
        const __int128 centered = n * s2 - s1 * s1;  // n^2 * T_k^2 * biased variance
        const double stddev =
            centered == 0 ? 0.0
                          : std::sqrt(static_cast<double>(centered) / (dn * (dn - 1.0))) / tk;
        const TInterval t = make_interval(mean, stddev, x.size(), delta_prime);
        z.point(i, j, k) = mean;
        z.lower(i, j, k) = std::min(t.lower, mean);
        z.upper(i, j, k) = std::max(t.upper, mean);
      }
    }
  }
  return z;
}

AggregateIntervals pbp_t(const PerformanceDataset& dataset, double delta,
                         const PolicyIterationOptions& options) {
  const NormalizedBoundMatrix z = normalized_t_bounds(dataset, delta);
  const StrategySpace space(dataset.num_algorithms(), dataset.num_environments());
  return propagate_bounds(space, z, delta, options);
}

std::vector<std::vector<double>> bootstrap_replicates(const PerformanceDataset& dataset,
                                                      const BootstrapConfig& cfg) {
  if (cfg.samples < 100)
    throw InvalidArgument("bootstrap needs at least 100 resamples, got " +
                          std::to_string(cfg.samples));
  const std::size_t A = dataset.num_algorithms();
  const std::size_t M = dataset.num_environments();
  if (!dataset.complete(2))
    throw InvalidArgument("bootstrap needs at least two samples for every (algorithm, environment) pair");
  const StrategySpace space(A, M);

  std::vector<std::vector<double>> out(cfg.samples);
  std::vector<std::vector<double>> resampled(A * M);
  NormalizedBoundMatrix z(A, M);
  for (std::size_t b = 0; b < cfg.samples; ++b) {
    for (std::size_t i = 0; i < A; ++i)
      for (std::size_t j = 0; j < M; ++j) {
        const auto& src = dataset.values(i, j);
        auto& dst = resampled[i * M + j];
        dst.resize(src.size());
        Rng rng(derive_seed(cfg.seed, "bootstrap", {b, i, j}));
        for (double& v : dst) v = src[rng.below(src.size())];
        std::sort(dst.begin(), dst.end());
      }
    for (std::size_t i = 0; i < A; ++i)
      for (std::size_t j = 0; j < M; ++j)
        for (std::size_t k = 0; k < A; ++k) {
          const double p = mean_normalized_point(resampled[i * M + j], resampled[k * M + j]);
          z.point(i, j, k) = z.lower(i, j, k) = z.upper(i, j, k) = p;
        }
    out[b] = solve_game(space, z).y;
  }
  return out;
}

double percentile(std::vector<double> values, double p) {
  if (values.empty()) throw InvalidArgument("percentile of an empty set");
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("percentile level must lie in [0, 1]");
  std::sort(values.begin(), values.end());
  const double h = static_cast<double>(values.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

AggregateIntervals bootstrap_aggregate(const PerformanceDataset& dataset,
                                       const BootstrapConfig& cfg) {
  const std::size_t A = dataset.num_algorithms();
  const double delta_prime = per_pair_delta(cfg.delta, A, dataset.num_environments());
  const auto reps = bootstrap_replicates(dataset, cfg);

  AggregateIntervals out;
  out.delta = cfg.delta;
  out.lower.resize(A);
  out.upper.resize(A);
  std::vector<double> column(reps.size());
  for (std::size_t i = 0; i < A; ++i) {
    for (std::size_t b = 0; b < reps.size(); ++b) column[b] = reps[b][i];
    out.lower[i] = percentile(column, delta_prime / 2.0);
    out.upper[i] = percentile(column, 1.0 - delta_prime / 2.0);
  }
  return out;
}

}  // namespace rleval
