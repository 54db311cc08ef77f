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

// Empirical distribution machinery: CDF and quantile evaluation, DKW
// confidence bands, performance-percentile normalization and Anderson bounds
// on the mean of a monotone transform.

#include <cstddef>
#include <span>
#include <vector>

#include "rleval/perf_data.hpp"

namespace rleval {

// Right-continuous step function F(x) = #{t : x_t <= x} / T over sorted
// samples inside a known support.
class EmpiricalCdf {
 public:
  // Samples need not be sorted; they are sorted here. Throws InvalidArgument
  // when empty or when a sample lies outside `support`.
  EmpiricalCdf(std::vector<double> samples, ReturnBounds support);

  double operator()(double x) const;
  std::size_t count_at_most(double x) const;
  // inf{x : F(x) >= alpha}, i.e. the ceil(alpha T)-th order statistic.
  double quantile(double alpha) const;

  std::span<const double> samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  const ReturnBounds& support() const { return support_; }

 private:
  std::vector<double> samples_;
  ReturnBounds support_;
};

double cdf_eval(const EmpiricalCdf& cdf, double x);
double quantile(const EmpiricalCdf& cdf, double alpha);

// Half-width of the two-sided DKW band with Massart's constant.
double dkw_epsilon(std::size_t sample_count, double delta_prime);

// Simultaneous confidence envelope F^- <= F <= F^+ around an empirical CDF.
// Both envelopes are 0 below the support and 1 at or above its upper end.
class CdfBand {
 public:
  CdfBand(EmpiricalCdf base, double delta_prime);

  double lower(double x) const;
  double upper(double x) const;

  const EmpiricalCdf& base() const { return base_; }
  double epsilon() const { return epsilon_; }
  double delta_prime() const { return delta_prime_; }
  bool vacuous() const { return epsilon_ >= 1.0; }

 private:
  EmpiricalCdf base_;
  double delta_prime_;
  double epsilon_;
};

// Throws InvalidArgument when delta_prime is outside (0, 0.5].
CdfBand dkw_band(std::vector<double> samples, double delta_prime, ReturnBounds support);

// Performance percentile under a mixture of CDFs: sum_i w_i F_i(x).
double percentile_mixture(std::span<const EmpiricalCdf> cdfs, std::span<const double> weights,
                          double x);

// Mean of F_hat_{k,j}(x_{i,j,t}) over t. Throws InvalidArgument on a
// missing pair.
double mean_normalized_point(const PerformanceDataset& dataset, std::size_t i, std::size_t j,
                             std::size_t k);
// Same quantity for raw sorted sample vectors: mean of F_hat_ref(x_t).
double mean_normalized_point(std::span<const double> sorted_x, std::span<const double> sorted_ref);

struct MeanBounds {
  double lower = 0.0;
  double upper = 0.0;
};

// Anderson's bounds on E[g(X)] for nondecreasing g. `samples` must be the
// sorted samples the band was built from (unchecked). With x_0 = a and
// x_{T+1} = b:
//   lower = g_lo(x_T)     - sum_{t=0}^{T-1} [g_lo(x_{t+1}) - g_lo(x_t)] F^+(x_t)
//   upper = g_hi(x_{T+1}) - sum_{t=1}^{T}   [g_hi(x_{t+1}) - g_hi(x_t)] F^-(x_t)
template <class GLower, class GUpper>
MeanBounds anderson_mean_bounds(std::span<const double> samples, GLower&& g_lower,
                                GUpper&& g_upper, const CdfBand& band, ReturnBounds support) {
  const std::size_t n = samples.size();
  auto x = [&](std::size_t t) {
    if (t == 0) return support.min;
    if (t == n + 1) return support.max;
    return samples[t - 1];
  };
  MeanBounds out;
  double acc = 0.0;
  double g_prev = g_lower(x(0));
  for (std::size_t t = 0; t < n; ++t) {
    const double g_next = g_lower(x(t + 1));
    acc += (g_next - g_prev) * band.upper(x(t));
    g_prev = g_next;
  }
  out.lower = g_prev - acc;  // g_prev == g_lower(x_T)

  acc = 0.0;
  g_prev = g_upper(x(1));
  for (std::size_t t = 1; t <= n; ++t) {
    const double g_next = g_upper(x(t + 1));
    acc += (g_next - g_prev) * band.lower(x(t));
    g_prev = g_next;
  }
  out.upper = g_prev - acc;  // g_prev == g_upper(x_{T+1})
  return out;
}

// Anderson bounds on the mean return itself (g = identity).
MeanBounds anderson_mean_return_bounds(const CdfBand& band);

// Point estimates and confidence bounds on the mean normalized performance
// z_{i,j,k} = E[F_{k,j}(X_{i,j})], indexed algorithm i, environment j,
// reference algorithm k. The flat layout matches the joint strategy index of
// the evaluation game: ((i * M) + j) * A + k.
class NormalizedBoundMatrix {
 public:
  NormalizedBoundMatrix() = default;
  NormalizedBoundMatrix(std::size_t num_algorithms, std::size_t num_environments);

  std::size_t num_algorithms() const { return num_algorithms_; }
  std::size_t num_environments() const { return num_environments_; }
  std::size_t size() const { return point_.size(); }
  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const {
    return (i * num_environments_ + j) * num_algorithms_ + k;
  }

  double& point(std::size_t i, std::size_t j, std::size_t k) { return point_[index(i, j, k)]; }
  double& lower(std::size_t i, std::size_t j, std::size_t k) { return lower_[index(i, j, k)]; }
  double& upper(std::size_t i, std::size_t j, std::size_t k) { return upper_[index(i, j, k)]; }
  double point(std::size_t i, std::size_t j, std::size_t k) const { return point_[index(i, j, k)]; }
  double lower(std::size_t i, std::size_t j, std::size_t k) const { return lower_[index(i, j, k)]; }
  double upper(std::size_t i, std::size_t j, std::size_t k) const { return upper_[index(i, j, k)]; }

  std::span<const double> point() const { return point_; }
  std::span<const double> lower() const { return lower_; }
  std::span<const double> upper() const { return upper_; }
  std::span<double> point() { return point_; }
  std::span<double> lower() { return lower_; }
  std::span<double> upper() { return upper_; }

 private:
  std::size_t num_algorithms_ = 0;
  std::size_t num_environments_ = 0;
  std::vector<double> point_;
  std::vector<double> lower_;
  std::vector<double> upper_;
};

// Plug-in point estimates only; lower/upper are set equal to the point.
NormalizedBoundMatrix normalized_point_matrix(const PerformanceDataset& dataset);

// One DKW band per (i, j) at delta' = delta / (|A| |M|), then Anderson bounds
// with g_lower = F^-_{k,j} and g_upper = F^+_{k,j}. Requires every pair to
// have at least two samples.
NormalizedBoundMatrix normalized_bounds_matrix(const PerformanceDataset& dataset, double delta);

// delta / (|A| |M|), validating delta in (0, 0.5].
double per_pair_delta(double delta, std::size_t num_algorithms, std::size_t num_environments);

}  // namespace rleval
