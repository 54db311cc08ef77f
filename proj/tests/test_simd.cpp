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

#include <cmath>
#include <cstring>
#include <limits>
#include <vector>

#include "rleval/rng.hpp"
#include "rleval/simd/kernels.hpp"

namespace rleval::simd {
namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

std::vector<double> random_vector(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  // Mixed magnitudes make summation order visible in the last bits.
  for (double& x : v) x = rng.uniform(-1.0, 1.0) * std::pow(10.0, rng.uniform(-8.0, 8.0));
  return v;
}

class SimdEquivalence : public ::testing::Test {
 protected:
  void SetUp() override {
    if (!backend_supported(Backend::kAvx2)) GTEST_SKIP() << "AVX2 not available";
  }
};

#ifdef RLEVAL_HAVE_AVX2_KERNELS

TEST_F(SimdEquivalence, Dot) {
  Rng rng(1);
  for (std::size_t n = 0; n < 70; ++n)
    for (int rep = 0; rep < 20; ++rep) {
      const auto a = random_vector(rng, n), b = random_vector(rng, n);
      EXPECT_TRUE(same_bits(scalar::dot(a.data(), b.data(), n), avx2::dot(a.data(), b.data(), n)))
          << "n=" << n;
    }
}

TEST_F(SimdEquivalence, Axpy) {
  Rng rng(2);
  for (std::size_t n = 0; n < 70; ++n) {
    const auto x = random_vector(rng, n);
    auto y1 = random_vector(rng, n);
    auto y2 = y1;
    const double alpha = rng.uniform(-3.0, 3.0);
    scalar::axpy(alpha, x.data(), y1.data(), n);
    avx2::axpy(alpha, x.data(), y2.data(), n);
    for (std::size_t i = 0; i < n; ++i) EXPECT_TRUE(same_bits(y1[i], y2[i]));
  }
}

TEST_F(SimdEquivalence, Scale) {
  Rng rng(3);
  for (std::size_t n = 0; n < 70; ++n) {
    auto x1 = random_vector(rng, n);
    auto x2 = x1;
    const double alpha = rng.uniform(-3.0, 3.0);
    scalar::scale(alpha, x1.data(), n);
    avx2::scale(alpha, x2.data(), n);
    for (std::size_t i = 0; i < n; ++i) EXPECT_TRUE(same_bits(x1[i], x2[i]));
  }
}

TEST_F(SimdEquivalence, MaxAbsDiff) {
  Rng rng(4);
  for (std::size_t n = 0; n < 70; ++n) {
    const auto a = random_vector(rng, n), b = random_vector(rng, n);
    EXPECT_TRUE(same_bits(scalar::max_abs_diff(a.data(), b.data(), n),
                          avx2::max_abs_diff(a.data(), b.data(), n)));
  }
  EXPECT_EQ(avx2::max_abs_diff(nullptr, nullptr, 0), 0.0);
}

TEST_F(SimdEquivalence, AllFinite) {
  Rng rng(5);
  const double bad[] = {std::numeric_limits<double>::quiet_NaN(),
                        std::numeric_limits<double>::infinity(),
                        -std::numeric_limits<double>::infinity()};
  for (std::size_t n = 1; n < 40; ++n) {
    auto x = random_vector(rng, n);
    EXPECT_TRUE(scalar::all_finite(x.data(), n));
    EXPECT_TRUE(avx2::all_finite(x.data(), n));
    for (double b : bad)
      for (std::size_t pos = 0; pos < n; ++pos) {
        auto y = x;
        y[pos] = b;
        EXPECT_FALSE(scalar::all_finite(y.data(), n));
        EXPECT_FALSE(avx2::all_finite(y.data(), n)) << "n=" << n << " pos=" << pos;
      }
  }
}

#endif

TEST(SimdDispatch, SetBackend) {
  const Backend original = active_backend();
  EXPECT_EQ(set_backend(Backend::kScalar), Backend::kScalar);
  EXPECT_EQ(active_backend(), Backend::kScalar);
  const Backend got = set_backend(Backend::kAvx2);
  EXPECT_EQ(got, backend_supported(Backend::kAvx2) ? Backend::kAvx2 : Backend::kScalar);
  EXPECT_EQ(active_backend(), got);
  set_backend(original);
  EXPECT_EQ(backend_name(Backend::kScalar), "scalar");
  EXPECT_EQ(backend_name(Backend::kAvx2), "avx2");
}

// The dispatching entry points agree with a plain loop up to rounding, and
// with each other exactly.
TEST(SimdDispatch, EntryPoints) {
  Rng rng(6);
  const auto a = random_vector(rng, 37), b = random_vector(rng, 37);
  long double ref = 0.0L;
  for (std::size_t i = 0; i < a.size(); ++i) ref += static_cast<long double>(a[i]) * b[i];
  const Backend original = active_backend();
  set_backend(Backend::kScalar);
  const double s = dot(a.data(), b.data(), a.size());
  set_backend(Backend::kAvx2);
  const double v = dot(a.data(), b.data(), a.size());
  set_backend(original);
  EXPECT_TRUE(same_bits(s, v));
  double scale_ref = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) scale_ref += std::abs(a[i] * b[i]);
  EXPECT_NEAR(s, static_cast<double>(ref), 1e-14 * scale_ref);
}

}  // namespace
}  // namespace rleval::simd
