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

// Data collection and plot-data emission.

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "rleval/harness/config.hpp"
#include "rleval/perf_data.hpp"

namespace rleval::harness {

// Runs every (algorithm, environment) pair for cfg.trials trials. Trial t of
// every pair uses seed derive_seed(cfg.seed, "trial", {t}), which is also
// the seed recorded in the dataset. Environment bounds are declared
// explicitly so a non-default Mountain Car cutoff is honored.
PerformanceDataset collect(const ExperimentConfig& cfg);

struct QuantileRow {
  double alpha = 0.0;
  double value = 0.0;
  double band_low = 0.0;
  double band_high = 0.0;
};

// Empirical quantile function of (i, j) at alpha = t / (T + 1), t = 1..T,
// merged with alpha = g / (grid + 1), g = 1..grid. The band inverts the DKW
// envelopes at delta': band_low = inf{x : F^+(x) >= alpha} and
// band_high = inf{x : F^-(x) >= alpha}, both within [a_j, b_j].
std::vector<QuantileRow> quantile_plot_data(const PerformanceDataset& dataset, std::size_t i,
                                            std::size_t j, double delta_prime,
                                            std::size_t grid = 0);

struct CdfRow {
  std::size_t algorithm = 0;
  double x = 0.0;
  double cdf = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

// Per algorithm, (x, F_hat, F^-, F^+) at the pooled sample values of
// environment j, algorithm-major and ascending in x.
std::vector<CdfRow> cdf_plot_data(const PerformanceDataset& dataset, std::size_t j,
                                  double delta_prime);

void write_quantile_csv(const std::vector<QuantileRow>& rows, std::ostream& out);
void write_cdf_csv(const PerformanceDataset& dataset, const std::vector<CdfRow>& rows,
                   std::ostream& out);

}  // namespace rleval::harness
