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

// Alternative interval methods: Student-t bounds on the mean normalized
// performance fed through the same propagation as PBP, and the percentile
// bootstrap on the point aggregate. Both are tighter than PBP and neither
// carries its guarantee.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rleval/distribution_stats.hpp"
#include "rleval/pbp.hpp"
#include "rleval/perf_data.hpp"

namespace rleval {

// p-quantile of Student's t with nu degrees of freedom. Throws
// InvalidArgument unless p in (0, 1) and nu >= 1.
double t_quantile(double p, double nu);

struct TInterval {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation (n - 1)
  double lower = 0.0;
  double upper = 0.0;
};

// mean -/+ stddev / sqrt(T) * t_{1 - delta', T - 1}, clipped to [0, 1].
// Throws InvalidArgument for fewer than two values.
TInterval t_interval(std::span<const double> values, double delta_prime);

// Z matrix whose bounds are t-intervals over z_t = F_hat_{k,j}(x_{i,j,t}),
// at delta' = delta / (|A| |M|). Zero variance gives the point (mu, mu).
NormalizedBoundMatrix normalized_t_bounds(const PerformanceDataset& dataset, double delta);

// PBP with the t-based Z matrix.
AggregateIntervals pbp_t(const PerformanceDataset& dataset, double delta,
                         const PolicyIterationOptions& options = {});

inline constexpr std::size_t kDefaultBootstrapSamples = 2000;

struct BootstrapConfig {
  std::size_t samples = kDefaultBootstrapSamples;  // B, at least 100
  double delta = 0.05;
  std::uint64_t seed = 0;
};

// Point aggregate y for every replicate, replicate-major. Replicate b
// resamples every (i, j) with replacement from derive_seed(seed, "bootstrap",
// {b, i, j}).
std::vector<std::vector<double>> bootstrap_replicates(const PerformanceDataset& dataset,
                                                      const BootstrapConfig& cfg);

// Linear-interpolation percentile (type 7) of unsorted values, p in [0, 1].
double percentile(std::vector<double> values, double p);

// Per algorithm, the delta'/2 and 1 - delta'/2 percentiles of the replicate
// aggregates.
AggregateIntervals bootstrap_aggregate(const PerformanceDataset& dataset,
                                       const BootstrapConfig& cfg);

}  // namespace rleval
