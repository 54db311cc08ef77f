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


#include "rleval/harness/collect.hpp"

#include <algorithm>
#include <ostream>

#include "rleval/distribution_stats.hpp"
#include "rleval/error.hpp"
#include "rleval/rl/trial.hpp"
#include "rleval/rng.hpp"

namespace rleval::harness {

PerformanceDataset collect(const ExperimentConfig& cfg) {
  cfg.validate();
  DatasetBuilder builder;
  std::vector<EnvironmentDescriptor> envs;
  for (const auto& name : cfg.environments) {
    EnvironmentDescriptor d = *parse_environment_name(name);
    d.mountain_car_cutoff = cfg.mountain_car_cutoff;
    envs.push_back(d);
    builder.add_environment(name);
    builder.set_bounds(name, env_return_bounds(d));
  }
  for (const auto& alg_name : cfg.algorithms) {
    builder.add_algorithm(alg_name);
    const rl::AlgorithmDefinition alg = *rl::parse_algorithm_name(alg_name);
    for (std::size_t j = 0; j < envs.size(); ++j)
      for (std::size_t t = 0; t < cfg.trials; ++t) {
        const std::uint64_t seed = derive_seed(cfg.seed, "trial", {t});
        builder.add(alg_name, cfg.environments[j], seed,
                    rl::run_trial(alg, envs[j], seed, cfg.episodes));
      }
  }
  return builder.build();
}

namespace {

// inf{x in {a, x_1..x_T, b} : f(x) >= alpha} for nondecreasing f with
// f(b) = 1.
template <class F>
double invert(const std::vector<double>& candidates, F&& f, double alpha) {
  auto it = std::partition_point(candidates.begin(), candidates.end(),
                                 [&](double x) { return f(x) < alpha; });
  return it == candidates.end() ? candidates.back() : *it;
}

}  // namespace

std::vector<QuantileRow> quantile_plot_data(const PerformanceDataset& dataset, std::size_t i,
                                            std::size_t j, double delta_prime, std::size_t grid) {
  if (!dataset.has_samples(i, j)) throw InvalidArgument("quantile plot: no samples for the pair");
  const CdfBand band(EmpiricalCdf(dataset.values(i, j), dataset.bounds(j)), delta_prime);
  const std::size_t T = band.base().size();

  std::vector<double> alphas;
  for (std::size_t t = 1; t <= T; ++t)
    alphas.push_back(static_cast<double>(t) / static_cast<double>(T + 1));
  for (std::size_t g = 1; g <= grid; ++g)
    alphas.push_back(static_cast<double>(g) / static_cast<double>(grid + 1));
  std::sort(alphas.begin(), alphas.end());
  alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());

  std::vector<double> candidates;
  candidates.push_back(dataset.bounds(j).min);
  for (double x : band.base().samples()) candidates.push_back(x);
  candidates.push_back(dataset.bounds(j).max);
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  std::vector<QuantileRow> rows;
  rows.reserve(alphas.size());
  for (double alpha : alphas) {
    QuantileRow r;
    r.alpha = alpha;
    r.value = band.base().quantile(alpha);
    r.band_low = invert(candidates, [&](double x) { return band.upper(x); }, alpha);
    r.band_high = invert(candidates, [&](double x) { return band.lower(x); }, alpha);
    rows.push_back(r);
  }
  return rows;
}

std::vector<CdfRow> cdf_plot_data(const PerformanceDataset& dataset, std::size_t j,
                                  double delta_prime) {
  std::vector<double> xs;
  for (std::size_t i = 0; i < dataset.num_algorithms(); ++i)
    if (dataset.has_samples(i, j)) {
      const auto& v = dataset.values(i, j);
      xs.insert(xs.end(), v.begin(), v.end());
    }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  std::vector<CdfRow> rows;
  for (std::size_t i = 0; i < dataset.num_algorithms(); ++i) {
    if (!dataset.has_samples(i, j)) continue;
    const CdfBand band(EmpiricalCdf(dataset.values(i, j), dataset.bounds(j)), delta_prime);
    for (double x : xs) rows.push_back({i, x, band.base()(x), band.lower(x), band.upper(x)});
  }
  return rows;
}

void write_quantile_csv(const std::vector<QuantileRow>& rows, std::ostream& out) {
  out << "alpha,quantile,band_low,band_high\n";
  for (const auto& r : rows)
    out << format_real(r.alpha) << ',' << format_real(r.value) << ',' << format_real(r.band_low)
        << ',' << format_real(r.band_high) << '\n';
}

void write_cdf_csv(const PerformanceDataset& dataset, const std::vector<CdfRow>& rows,
                   std::ostream& out) {
  out << "algorithm,x,cdf,cdf_lower,cdf_upper\n";
  for (const auto& r : rows)
    out << dataset.algorithms()[r.algorithm] << ',' << format_real(r.x) << ','
        << format_real(r.cdf) << ',' << format_real(r.lower) << ',' << format_real(r.upper)
        << '\n';
}

}  // namespace rleval::harness
