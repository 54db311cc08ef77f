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

// Failure-rate meta-experiment. Synthetic performance distributions with
// closed-form CDFs give the exact mean normalized performance z and hence the
// exact aggregate y; repeated evaluations on fresh samples then estimate how
// often each interval method misses y.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rleval/distribution_stats.hpp"
#include "rleval/harness/config.hpp"
#include "rleval/perf_data.hpp"
#include "rleval/rng.hpp"

namespace rleval::harness {

// Point mass when lo == hi, otherwise uniform on [lo, hi].
struct MixtureComponent {
  double weight = 1.0;
  double lo = 0.0;
  double hi = 0.0;
};

class MixtureDistribution {
 public:
  MixtureDistribution() = default;
  // Weights must be positive and sum to 1 within 1e-12.
  explicit MixtureDistribution(std::vector<MixtureComponent> parts);

  const std::vector<MixtureComponent>& parts() const { return parts_; }
  double cdf(double x) const;
  double sample(Rng& rng) const;
  double min() const;
  double max() const;

 private:
  std::vector<MixtureComponent> parts_;
};

// P(X_ref <= X) for independent X ~ x and X_ref ~ ref, i.e. E[F_ref(X)].
double prob_at_most(const MixtureDistribution& ref, const MixtureDistribution& x);

struct SyntheticTruth {
  std::vector<std::string> algorithms;
  std::vector<std::string> environments;
  std::vector<ReturnBounds> bounds;
  std::vector<MixtureDistribution> distributions;  // algorithm-major, [i * M + j]

  const MixtureDistribution& at(std::size_t i, std::size_t j) const {
    return distributions[i * environments.size() + j];
  }
  // Throws InvalidArgument when shapes disagree or a distribution leaves its
  // environment's bounds.
  void validate() const;
};

// The built-in 4 x 3 design. Every environment mixes smooth performers with
// algorithms that sometimes collapse to the worst return, the way diverging
// learners do.
SyntheticTruth default_synthetic_truth();

// Exact z_{i,j,k} (point = lower = upper).
NormalizedBoundMatrix true_normalized_matrix(const SyntheticTruth& truth);
// Payoff ties are detected with tolerance 1e-12.
std::vector<double> true_aggregate(const SyntheticTruth& truth);

// T samples per pair from derive_seed(seed, "synthetic", {i, j}).
PerformanceDataset sample_dataset(const SyntheticTruth& truth, std::size_t samples,
                                  std::uint64_t seed);

struct FailureRateRow {
  IntervalMethod method = IntervalMethod::kPbp;
  std::size_t sample_size = 0;
  std::size_t replicates = 0;
  std::size_t failures = 0;
  double failure_rate = 0.0;
  double significant = 0.0;  // mean fraction of algorithm pairs with disjoint intervals
  double mean_width = 0.0;
  std::size_t nonconverged = 0;
};

struct FailureRateOptions {
  std::vector<IntervalMethod> methods;
  std::vector<std::size_t> sizes;
  std::size_t replicates = 100;
  double delta = 0.05;
  std::size_t boot_samples = 2000;
  std::uint64_t seed = 0;
};

// Replicate r at size T evaluates sample_dataset(truth, T, derive_seed(seed,
// "replicate", {T, r})) with every method, so methods see identical data.
// Rows are ordered by size, then method.
std::vector<FailureRateRow> failure_rate_experiment(const SyntheticTruth& truth,
                                                    const FailureRateOptions& options);

void write_failure_rate_csv(const std::vector<FailureRateRow>& rows, std::ostream& out);

}  // namespace rleval::harness
