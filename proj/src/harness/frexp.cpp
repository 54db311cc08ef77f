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


#include "rleval/harness/frexp.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "rleval/error.hpp"
#include "rleval/game.hpp"
#include "rleval/harness/report.hpp"

namespace rleval::harness {

MixtureDistribution::MixtureDistribution(std::vector<MixtureComponent> parts)
    : parts_(std::move(parts)) {
  if (parts_.empty()) throw InvalidArgument("mixture needs at least one component");
  double total = 0.0;
  for (const auto& p : parts_) {
    if (!(p.weight > 0.0)) throw InvalidArgument("mixture weights must be positive");
    if (!(p.lo <= p.hi)) throw InvalidArgument("mixture component with lo > hi");
    total += p.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvalidArgument("mixture weights must sum to 1");
}

namespace {

// CDF of a single component at x.
double component_cdf(const MixtureComponent& c, double x) {
  if (c.lo == c.hi) return x >= c.lo ? 1.0 : 0.0;
  return std::clamp((x - c.lo) / (c.hi - c.lo), 0.0, 1.0);
}

// Antiderivative of the uniform [lo, hi] CDF, zero at lo.
double cdf_integral(const MixtureComponent& c, double x) {
  const double w = c.hi - c.lo;
  if (x <= c.lo) return 0.0;
  if (x <= c.hi) return (x - c.lo) * (x - c.lo) / (2.0 * w);
  return w / 2.0 + (x - c.hi);
}

// P(R <= X) for single components.
double component_at_most(const MixtureComponent& r, const MixtureComponent& x) {
  if (x.lo == x.hi) return component_cdf(r, x.lo);
  if (r.lo == r.hi) return 1.0 - component_cdf(x, r.lo);  // X continuous: P(X = r) = 0
  return (cdf_integral(r, x.hi) - cdf_integral(r, x.lo)) / (x.hi - x.lo);
}

}  // namespace

double MixtureDistribution::cdf(double x) const {
  double f = 0.0;
  for (const auto& p : parts_) f += p.weight * component_cdf(p, x);
  return std::min(f, 1.0);
}

double MixtureDistribution::sample(Rng& rng) const {
  double u = rng.uniform();
  const MixtureComponent* pick = &parts_.back();
  for (const auto& p : parts_) {
    if (u < p.weight) {
      pick = &p;
      break;
    }
    u -= p.weight;
  }
  if (pick->lo == pick->hi) return pick->lo;
  return std::min(pick->hi, pick->lo + (pick->hi - pick->lo) * rng.uniform());
}

double MixtureDistribution::min() const {
  double m = INFINITY;
  for (const auto& p : parts_) m = std::min(m, p.lo);
  return m;
}

double MixtureDistribution::max() const {
  double m = -INFINITY;
  for (const auto& p : parts_) m = std::max(m, p.hi);
  return m;
}

double prob_at_most(const MixtureDistribution& ref, const MixtureDistribution& x) {
  double total = 0.0;
  for (const auto& r : ref.parts())
    for (const auto& c : x.parts()) total += r.weight * c.weight * component_at_most(r, c);
  return std::clamp(total, 0.0, 1.0);
}

void SyntheticTruth::validate() const {
  const std::size_t A = algorithms.size();
  const std::size_t M = environments.size();
  if (A < 2 || M < 1) throw InvalidArgument("synthetic truth needs two algorithms and an environment");
  if (bounds.size() != M || distributions.size() != A * M)
    throw InvalidArgument("synthetic truth: shape mismatch");
  for (std::size_t i = 0; i < A; ++i)
    for (std::size_t j = 0; j < M; ++j) {
      const auto& d = at(i, j);
      if (d.parts().empty()) throw InvalidArgument("synthetic truth: empty distribution");
      if (d.min() < bounds[j].min || d.max() > bounds[j].max)
        throw InvalidArgument("synthetic truth: distribution leaves the environment bounds");
    }
}

SyntheticTruth default_synthetic_truth() {
  SyntheticTruth t;
  t.algorithms = {"alg_a", "alg_b", "alg_c", "alg_d"};
  t.environments = {"task_a", "task_b", "task_c"};
  t.bounds = {{-100.0, 0.0}, {-50.0, -5.0}, {0.0, 1.0}};
  // Per algorithm, one mixture per environment with components given on
  // [0, 1] and mapped onto the environment's bounds. Every cell is a run
  // that nearly always lands on the same return (an atom) and occasionally
  // escapes to a spread of other returns. Small samples often miss the
  // escapes entirely, which is what separates the interval methods.
  using P = std::vector<MixtureComponent>;
  const std::vector<std::vector<P>> unit = {
      {P{{0.873, 0.921, 0.921}, {0.127, 0.667, 0.767}},
       P{{0.878, 0.194, 0.194}, {0.122, 0.480, 0.580}},
       P{{0.956, 0.226, 0.226}, {0.044, 0.478, 0.578}}},
      {P{{0.909, 0.527, 0.527}, {0.091, 0.618, 0.718}},
       P{{0.949, 0.693, 0.693}, {0.051, 0.224, 0.324}},
       P{{0.931, 0.924, 0.924}, {0.069, 0.124, 0.224}}},
      {P{{0.947, 0.631, 0.631}, {0.053, 0.625, 0.725}},
       P{{0.937, 0.558, 0.558}, {0.063, 0.175, 0.275}},
       P{{0.932, 0.935, 0.935}, {0.068, 0.810, 0.910}}},
      {P{{0.928, 0.514, 0.514}, {0.072, 0.696, 0.796}},
       P{{0.883, 0.549, 0.549}, {0.117, 0.201, 0.301}},
       P{{0.859, 0.980, 0.980}, {0.141, 0.675, 0.775}}},
  };
  for (std::size_t i = 0; i < unit.size(); ++i)
    for (std::size_t j = 0; j < t.environments.size(); ++j) {
      const ReturnBounds b = t.bounds[j];
      P mapped;
      for (auto c : unit[i][j]) {
        c.lo = b.min + (b.max - b.min) * c.lo;
        c.hi = b.min + (b.max - b.min) * c.hi;
        mapped.push_back(c);
      }
      t.distributions.emplace_back(std::move(mapped));
    }
  t.validate();
  return t;
}

NormalizedBoundMatrix true_normalized_matrix(const SyntheticTruth& truth) {
  truth.validate();
  const std::size_t A = truth.algorithms.size();
  const std::size_t M = truth.environments.size();
  NormalizedBoundMatrix z(A, M);
  for (std::size_t i = 0; i < A; ++i)
    for (std::size_t j = 0; j < M; ++j)
      for (std::size_t k = 0; k < A; ++k)
        z.point(i, j, k) = z.lower(i, j, k) = z.upper(i, j, k) =
            prob_at_most(truth.at(k, j), truth.at(i, j));
  return z;
}

std::vector<double> true_aggregate(const SyntheticTruth& truth) {
  const NormalizedBoundMatrix z = true_normalized_matrix(truth);
  const StrategySpace space(truth.algorithms.size(), truth.environments.size());
  const MarkovMatrix c = build_markov_matrix(space, z.point(), 1e-12);
  const auto d = stationary_distribution(dampen(c, space.gamma()));
  return aggregate_scores(space, d, z);
}

PerformanceDataset sample_dataset(const SyntheticTruth& truth, std::size_t samples,
                                  std::uint64_t seed) {
  const std::size_t A = truth.algorithms.size();
  const std::size_t M = truth.environments.size();
  DatasetBuilder builder;
  for (const auto& a : truth.algorithms) builder.add_algorithm(a);
  for (std::size_t j = 0; j < M; ++j) {
    builder.add_environment(truth.environments[j]);
    builder.set_bounds(truth.environments[j], truth.bounds[j]);
  }
  for (std::size_t i = 0; i < A; ++i)
    for (std::size_t j = 0; j < M; ++j) {
      Rng rng(derive_seed(seed, "synthetic", {i, j}));
      for (std::size_t t = 0; t < samples; ++t)
        builder.add(truth.algorithms[i], truth.environments[j], t, truth.at(i, j).sample(rng));
    }
  return builder.build();
}

std::vector<FailureRateRow> failure_rate_experiment(const SyntheticTruth& truth,
                                                    const FailureRateOptions& options) {
  if (options.replicates < 1) throw InvalidArgument("failure-rate experiment needs replicates");
  const std::vector<double> y = true_aggregate(truth);
  const std::size_t A = y.size();
  const double pairs = static_cast<double>(A * (A - 1) / 2);

  std::vector<FailureRateRow> rows;
  for (std::size_t size : options.sizes) {
    std::vector<FailureRateRow> block(options.methods.size());
    for (std::size_t m = 0; m < options.methods.size(); ++m) {
      block[m].method = options.methods[m];
      block[m].sample_size = size;
      block[m].replicates = options.replicates;
    }
    for (std::size_t r = 0; r < options.replicates; ++r) {
      const PerformanceDataset data =
          sample_dataset(truth, size, derive_seed(options.seed, "replicate", {size, r}));
      for (std::size_t m = 0; m < options.methods.size(); ++m) {
        EvaluateOptions eo;
        eo.delta = options.delta;
        eo.method = options.methods[m];
        eo.boot_samples = options.boot_samples;
        eo.seed = derive_seed(options.seed, "bootstrap", {size, r});
        const AggregateIntervals iv = compute_intervals(data, eo);
        FailureRateRow& row = block[m];
        bool failed = false;
        double width = 0.0;
        for (std::size_t i = 0; i < A; ++i) {
          if (y[i] < iv.lower[i] || y[i] > iv.upper[i]) failed = true;
          width += iv.upper[i] - iv.lower[i];
        }
        std::size_t disjoint = 0;
        for (std::size_t a = 0; a < A; ++a)
          for (std::size_t b = a + 1; b < A; ++b)
            if (iv.lower[a] > iv.upper[b] || iv.lower[b] > iv.upper[a]) ++disjoint;
        row.failures += failed ? 1 : 0;
        row.significant += static_cast<double>(disjoint) / pairs;
        row.mean_width += width / static_cast<double>(A);
        row.nonconverged += iv.converged() ? 0 : 1;
      }
    }
    for (auto& row : block) {
      const double R = static_cast<double>(row.replicates);
      row.failure_rate = static_cast<double>(row.failures) / R;
      row.significant /= R;
      row.mean_width /= R;
      rows.push_back(row);
    }
  }
  return rows;
}

void write_failure_rate_csv(const std::vector<FailureRateRow>& rows, std::ostream& out) {
  out << "method,sample_size,replicates,failures,fr,sig,mean_width,nonconverged\n";
  for (const auto& r : rows)
    out << method_name(r.method) << ',' << r.sample_size << ',' << r.replicates << ','
        << r.failures << ',' << format_real(r.failure_rate) << ',' << format_real(r.significant)
        << ',' << format_real(r.mean_width) << ',' << r.nonconverged << '\n';
}

}  // namespace rleval::harness
