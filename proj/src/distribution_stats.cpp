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

#include "rleval/distribution_stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "rleval/error.hpp"

namespace rleval {

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples, ReturnBounds support)
    : samples_(std::move(samples)), support_(support) {
  if (samples_.empty()) throw InvalidArgument("empirical CDF needs at least one sample");
  if (!(support_.min <= support_.max)) throw InvalidArgument("empirical CDF: empty support");
  std::sort(samples_.begin(), samples_.end());
  if (samples_.front() < support_.min || samples_.back() > support_.max)
    throw InvalidArgument("empirical CDF: sample outside support");
}

std::size_t EmpiricalCdf::count_at_most(double x) const {
  return static_cast<std::size_t>(std::upper_bound(samples_.begin(), samples_.end(), x) -
                                  samples_.begin());
}

double EmpiricalCdf::operator()(double x) const {
  return static_cast<double>(count_at_most(x)) / static_cast<double>(samples_.size());
}

double EmpiricalCdf::quantile(double alpha) const {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw InvalidArgument("quantile level must lie in (0, 1), got " + std::to_string(alpha));
  const std::size_t n = samples_.size();
  const double dn = static_cast<double>(n);
  // Smallest order-statistic index k with k / n >= alpha, evaluated with the
  // same arithmetic as operator() so quantile and CDF agree at the steps.
  auto k = static_cast<std::size_t>(std::ceil(alpha * dn));
  k = std::clamp<std::size_t>(k, 1, n);
  while (k > 1 && static_cast<double>(k - 1) / dn >= alpha) --k;
  while (k < n && static_cast<double>(k) / dn < alpha) ++k;
  // With ties the CDF jumps past several indices at once; the infimum is the
  // value at index k either way.
  return samples_[k - 1];
}

double cdf_eval(const EmpiricalCdf& cdf, double x) { return cdf(x); }
double quantile(const EmpiricalCdf& cdf, double alpha) { return cdf.quantile(alpha); }

double dkw_epsilon(std::size_t sample_count, double delta_prime) {
  if (sample_count == 0) throw InvalidArgument("DKW band needs at least one sample");
  return std::sqrt(std::log(2.0 / delta_prime) / (2.0 * static_cast<double>(sample_count)));
}

CdfBand::CdfBand(EmpiricalCdf base, double delta_prime)
    : base_(std::move(base)), delta_prime_(delta_prime) {
  if (!(delta_prime > 0.0 && delta_prime <= 0.5))
    throw InvalidArgument("DKW confidence level must lie in (0, 0.5], got " +
                          std::to_string(delta_prime));
  epsilon_ = dkw_epsilon(base_.size(), delta_prime);
}

double CdfBand::upper(double x) const {
  const auto& s = base_.support();
  if (x >= s.max) return 1.0;
  if (x < s.min) return 0.0;
  return std::min(1.0, base_(x) + epsilon_);
}

double CdfBand::lower(double x) const {
  const auto& s = base_.support();
  if (x >= s.max) return 1.0;
  if (x < s.min) return 0.0;
  return std::max(0.0, base_(x) - epsilon_);
}

CdfBand dkw_band(std::vector<double> samples, double delta_prime, ReturnBounds support) {
  return CdfBand(EmpiricalCdf(std::move(samples), support), delta_prime);
}

double percentile_mixture(std::span<const EmpiricalCdf> cdfs, std::span<const double> weights,
                          double x) {
  if (cdfs.size() != weights.size())
    throw InvalidArgument("mixture: one weight per CDF required");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw InvalidArgument("mixture: weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvalidArgument("mixture: weights must sum to 1");
  double value = 0.0;
  for (std::size_t i = 0; i < cdfs.size(); ++i) value += weights[i] * cdfs[i](x);
  return value;
}

namespace {

// sum_t #{u : ref_u <= x_t} for sorted x and ref, by a merge walk.
std::uint64_t sum_counts_at_most(std::span<const double> x, std::span<const double> ref) {
  std::uint64_t total = 0;
  std::size_t r = 0;
  for (double v : x) {
    while (r < ref.size() && ref[r] <= v) ++r;
    total += r;
  }
  return total;
}

double normalized_point(std::span<const double> x, std::span<const double> ref) {
  // One rounding of an exact rational keeps the self-normalization identity
  // (T + 1) / (2T) bit-exact for distinct samples.
  return static_cast<double>(sum_counts_at_most(x, ref)) /
         (static_cast<double>(x.size()) * static_cast<double>(ref.size()));
}

}  // namespace

double mean_normalized_point(const PerformanceDataset& dataset, std::size_t i, std::size_t j,
                             std::size_t k) {
  if (!dataset.has_samples(i, j) || !dataset.has_samples(k, j))
    throw InvalidArgument("mean normalized performance: missing (algorithm, environment) pair");
  return normalized_point(dataset.values(i, j), dataset.values(k, j));
}

double mean_normalized_point(std::span<const double> sorted_x, std::span<const double> sorted_ref) {
  if (sorted_x.empty() || sorted_ref.empty())
    throw InvalidArgument("mean normalized performance: empty sample list");
  return normalized_point(sorted_x, sorted_ref);
}

MeanBounds anderson_mean_return_bounds(const CdfBand& band) {
  auto identity = [](double v) { return v; };
  return anderson_mean_bounds(band.base().samples(), identity, identity, band,
                              band.base().support());
}

NormalizedBoundMatrix::NormalizedBoundMatrix(std::size_t num_algorithms,
                                             std::size_t num_environments)
    : num_algorithms_(num_algorithms),
      num_environments_(num_environments),
      point_(num_algorithms * num_environments * num_algorithms, 0.0),
      lower_(point_.size(), 0.0),
      upper_(point_.size(), 0.0) {}

double per_pair_delta(double delta, std::size_t num_algorithms, std::size_t num_environments) {
  if (!(delta > 0.0 && delta <= 0.5))
    throw InvalidArgument("confidence level delta must lie in (0, 0.5], got " +
                          std::to_string(delta));
  if (num_algorithms == 0 || num_environments == 0)
    throw InvalidArgument("need at least one algorithm and one environment");
  return delta / static_cast<double>(num_algorithms * num_environments);
}

NormalizedBoundMatrix normalized_point_matrix(const PerformanceDataset& dataset) {
  if (!dataset.complete(1))
    throw InvalidArgument("normalization needs samples for every (algorithm, environment) pair");
  const std::size_t A = dataset.num_algorithms();
  const std::size_t M = dataset.num_environments();
  NormalizedBoundMatrix z(A, M);
  for (std::size_t i = 0; i < A; ++i)
    for (std::size_t j = 0; j < M; ++j)
      for (std::size_t k = 0; k < A; ++k) {
        const double p = normalized_point(dataset.values(i, j), dataset.values(k, j));
        z.point(i, j, k) = z.lower(i, j, k) = z.upper(i, j, k) = p;
      }
  return z;
}

NormalizedBoundMatrix normalized_bounds_matrix(const PerformanceDataset& dataset, double delta) {
  const std::size_t A = dataset.num_algorithms();
  const std::size_t M = dataset.num_environments();
  const double delta_prime = per_pair_delta(delta, A, M);
  if (!dataset.complete(2))
    throw InvalidArgument("bounds need at least two samples for every (algorithm, environment) pair");

  std::vector<CdfBand> bands;
  bands.reserve(A * M);
  for (std::size_t i = 0; i < A; ++i)
    for (std::size_t j = 0; j < M; ++j)
      bands.emplace_back(EmpiricalCdf(dataset.values(i, j), dataset.bounds(j)), delta_prime);
  auto band = [&](std::size_t i, std::size_t j) -> const CdfBand& { return bands[i * M + j]; };

  NormalizedBoundMatrix z(A, M);
  for (std::size_t i = 0; i < A; ++i) {
    for (std::size_t j = 0; j < M; ++j) {
      const CdfBand& own = band(i, j);
      for (std::size_t k = 0; k < A; ++k) {
        const CdfBand& ref = band(k, j);
        const MeanBounds b = anderson_mean_bounds(
            own.base().samples(), [&ref](double x) { return ref.lower(x); },
            [&ref](double x) { return ref.upper(x); }, own, dataset.bounds(j));
        const double p = normalized_point(dataset.values(i, j), dataset.values(k, j));
        z.point(i, j, k) = p;
        // Anderson's bounds sandwich the plug-in mean exactly; min/max only
        // absorbs the last-bit rounding of the two summations.
        z.lower(i, j, k) = std::clamp(std::min(b.lower, p), 0.0, 1.0);
        z.upper(i, j, k) = std::clamp(std::max(b.upper, p), 0.0, 1.0);
      }
    }
  }
  return z;
}

}  // namespace rleval
