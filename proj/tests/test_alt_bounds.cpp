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


#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "rleval/alt_bounds.hpp"
#include "rleval/error.hpp"
#include "rleval/game.hpp"
#include "rleval/pbp.hpp"
#include "rleval/rng.hpp"

namespace rleval {
namespace {

TEST(TQuantile, KnownValues) {
  for (double nu : {1.0, 3.0, 30.0}) EXPECT_EQ(t_quantile(0.5, nu), 0.0);
  EXPECT_NEAR(t_quantile(0.975, 10), 2.2281, 5e-5);
  EXPECT_NEAR(t_quantile(0.95, 3), 2.3534, 5e-5);
  EXPECT_NEAR(t_quantile(0.025, 10), -t_quantile(0.975, 10), 1e-12);
}

TEST(TQuantile, InvertsSimpsonCdf) {
  for (double nu : {1.0, 2.0, 5.0, 9.0, 29.0, 99.0})
    for (double p : {0.6, 0.9, 0.975, 0.99, 0.9995}) {
      const double q = t_quantile(p, nu);
      EXPECT_NEAR(testing::t_cdf_simpson(q, nu), p, 1e-9) << "nu=" << nu << " p=" << p;
    }
}

TEST(TQuantile, Domain) {
  EXPECT_THROW(t_quantile(0.0, 3), InvalidArgument);
  EXPECT_THROW(t_quantile(1.0, 3), InvalidArgument);
  EXPECT_THROW(t_quantile(0.9, 0.5), InvalidArgument);
}

TEST(TInterval, HandExample) {
  const std::vector<double> z{0.1, 0.2, 0.3, 0.4};
  const TInterval t = t_interval(z, 0.05);
  EXPECT_NEAR(t.mean, 0.25, 1e-15);
  EXPECT_NEAR(t.stddev, 0.1291, 5e-5);
  EXPECT_NEAR(t.upper - t.mean, 0.1519, 5e-5);
  EXPECT_NEAR(t.lower, 0.0981, 5e-5);
  EXPECT_NEAR(t.upper, 0.4019, 5e-5);
}

TEST(TInterval, ZeroVarianceAndClipping) {
  const std::vector<double> c(5, 0.3);
  const TInterval t = t_interval(c, 0.01);
  EXPECT_EQ(t.lower, 0.3);
  EXPECT_EQ(t.upper, 0.3);
  const std::vector<double> wide{0.0, 1.0, 0.0, 1.0};
  const TInterval w = t_interval(wide, 0.01);
  EXPECT_EQ(w.lower, 0.0);
  EXPECT_EQ(w.upper, 1.0);
  const std::vector<double> one{0.5};
  EXPECT_THROW(t_interval(one, 0.05), InvalidArgument);
}

PerformanceDataset dataset(Rng& rng, std::size_t A, std::size_t M, std::size_t T) {
  DatasetBuilder b;
  for (std::size_t j = 0; j < M; ++j) b.set_bounds("e" + std::to_string(j), {0.0, 1.0});
  for (std::size_t i = 0; i < A; ++i) {
    const double shift = rng.uniform(0.0, 0.5);
    for (std::size_t j = 0; j < M; ++j)
      for (std::size_t t = 0; t < T; ++t)
        b.add("a" + std::to_string(i), "e" + std::to_string(j), t, shift + 0.5 * rng.uniform());
  }
  return b.build();
}

TEST(PbpT, BoundsAroundMean) {
  Rng rng(derive_seed(40, "pbpt"));
  const auto d = dataset(rng, 3, 2, 20);
  const auto z = normalized_t_bounds(d, 0.05);
  const auto p = normalized_point_matrix(d);
  for (std::size_t s = 0; s < z.size(); ++s) {
    EXPECT_LE(0.0, z.lower()[s]);
    EXPECT_LE(z.lower()[s], z.point()[s]);
    EXPECT_LE(z.point()[s], z.upper()[s]);
    EXPECT_LE(z.upper()[s], 1.0);
    EXPECT_NEAR(z.point()[s], p.point()[s], 1e-15);
  }
  const auto iv = pbp_t(d, 0.05);
  const auto y = solve_game(StrategySpace(3, 2), p).y;
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_LE(iv.lower[i], y[i] + 1e-7);
    EXPECT_GE(iv.upper[i], y[i] - 1e-7);
  }
}

// Z entries built from per-sample normalized values agree with t_interval.
TEST(PbpT, MatchesManualInterval) {
  Rng rng(derive_seed(41, "manual"));
  const auto d = dataset(rng, 2, 1, 12);
  const auto z = normalized_t_bounds(d, 0.05);
  const EmpiricalCdf ref(d.values(1, 0), d.bounds(0));
  std::vector<double> zt;
  for (double x : d.values(0, 0)) zt.push_back(ref(x));
  const TInterval t = t_interval(zt, 0.05 / 2);
  EXPECT_NEAR(z.lower(0, 0, 1), t.lower, 1e-12);
  EXPECT_NEAR(z.upper(0, 0, 1), t.upper, 1e-12);
}

TEST(PbpT, ConstantNormalizedSamples) {
  DatasetBuilder b;
  b.set_bounds("E", {0.0, 1.0});
  for (std::size_t t = 0; t < 5; ++t) {
    b.add("x", "E", t, 0.9);
    b.add("y", "E", t, 0.1 + 0.01 * static_cast<double>(t));
  }
  const auto z = normalized_t_bounds(b.build(), 0.05);
  EXPECT_EQ(z.lower(0, 0, 1), 1.0);
  EXPECT_EQ(z.upper(0, 0, 1), 1.0);
}

TEST(PbpT, NeedsTwoSamples) {
  DatasetBuilder b;
  b.set_bounds("E", {0.0, 1.0});
  b.add("x", "E", 0, 0.9);
  b.add("y", "E", 0, 0.1);
  b.add("y", "E", 1, 0.2);
  EXPECT_THROW(pbp_t(b.build(), 0.05), InvalidArgument);
}

TEST(Percentile, Type7) {
  EXPECT_EQ(percentile({3.0, 1.0, 2.0, 4.0}, 0.0), 1.0);
  EXPECT_EQ(percentile({3.0, 1.0, 2.0, 4.0}, 1.0), 4.0);
  EXPECT_DOUBLE_EQ(percentile({3.0, 1.0, 2.0, 4.0}, 0.5), 2.5);
  EXPECT_DOUBLE_EQ(percentile({10.0, 20.0}, 0.25), 12.5);
}

TEST(Bootstrap, IdenticalSamplesCollapse) {
  DatasetBuilder b;
  b.set_bounds("E", {0.0, 1.0});
  b.set_bounds("F", {0.0, 1.0});
  for (std::size_t t = 0; t < 4; ++t) {
    b.add("x", "E", t, 0.7);
    b.add("y", "E", t, 0.4);
    b.add("x", "F", t, 0.2);
    b.add("y", "F", t, 0.6);
  }
  const auto d = b.build();
  BootstrapConfig cfg;
  cfg.samples = 100;
  const auto iv = bootstrap_aggregate(d, cfg);
  const auto y = solve_game(StrategySpace(2, 2), normalized_point_matrix(d)).y;
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(iv.lower[i], iv.upper[i]);
    EXPECT_NEAR(iv.lower[i], y[i], 1e-15);
  }
}

TEST(Bootstrap, Deterministic) {
  Rng rng(derive_seed(42, "boot"));
  const auto d = dataset(rng, 3, 2, 10);
  BootstrapConfig cfg;
  cfg.samples = 200;
  cfg.seed = 17;
  const auto a = bootstrap_aggregate(d, cfg);
  const auto b = bootstrap_aggregate(d, cfg);
  EXPECT_EQ(a.lower, b.lower);
  EXPECT_EQ(a.upper, b.upper);
  cfg.seed = 18;
  const auto c = bootstrap_aggregate(d, cfg);
  EXPECT_NE(a.lower, c.lower);
}

TEST(Bootstrap, PercentilesOfReplicates) {
  Rng rng(derive_seed(43, "pct"));
  const auto d = dataset(rng, 2, 2, 8);
  BootstrapConfig cfg;
  cfg.samples = 150;
  const auto reps = bootstrap_replicates(d, cfg);
  ASSERT_EQ(reps.size(), 150u);
  const auto iv = bootstrap_aggregate(d, cfg);
  const double dp = cfg.delta / 4.0;
  for (std::size_t i = 0; i < 2; ++i) {
    std::vector<double> col;
    for (const auto& r : reps) col.push_back(r[i]);
    EXPECT_EQ(iv.lower[i], percentile(col, dp / 2.0));
    EXPECT_EQ(iv.upper[i], percentile(col, 1.0 - dp / 2.0));
  }
}

TEST(Bootstrap, RejectsSmallB) {
  Rng rng(derive_seed(44, "small"));
  BootstrapConfig cfg;
  cfg.samples = 99;
  EXPECT_THROW(bootstrap_aggregate(dataset(rng, 2, 1, 5), cfg), InvalidArgument);
}

double median_width(const AggregateIntervals& iv) {
  std::vector<double> w;
  for (std::size_t i = 0; i < iv.lower.size(); ++i) w.push_back(iv.upper[i] - iv.lower[i]);
  std::nth_element(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(w.size() / 2), w.end());
  return w[w.size() / 2];
}

// Bootstrap is the tightest and PBP the widest, by majority over datasets.
TEST(AltBounds, WidthOrdering) {
  Rng rng(derive_seed(45, "widths"));
  int ordered = 0;
  const int n = 20;
  for (int rep = 0; rep < n; ++rep) {
    const auto d = dataset(rng, 3, 2, 30);
    BootstrapConfig cfg;
    cfg.samples = 200;
    cfg.seed = static_cast<std::uint64_t>(rep);
    const double wb = median_width(bootstrap_aggregate(d, cfg));
    const double wt = median_width(pbp_t(d, 0.05));
    const double wp = median_width(pbp(d, 0.05));
    ordered += (wb <= wt && wt <= wp) ? 1 : 0;
  }
  EXPECT_GT(ordered, n / 2);
}

}  // namespace
}  // namespace rleval
