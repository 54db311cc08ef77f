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

// Dense double-precision vector kernels used by the linear agents and the
// Markov-chain solvers.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// implementation chosen at runtime. The scalar reference fixes the floating
// point evaluation order (reductions use eight interleaved partial sums
// combined pairwise, no fused multiply-add), and each SIMD variant reproduces
// that order exactly. Results are therefore bit-identical across backends,
// which keeps seeded experiments reproducible from machine to machine.

#include <cstddef>
#include <string_view>

namespace rleval::simd {

enum class Backend { kScalar, kAvx2 };

std::string_view backend_name(Backend backend);

// Best backend the running CPU supports.
Backend detect_backend();
// Backend currently used by the dispatching entry points below.
Backend active_backend();
// Forces a backend (tests, benchmarks). Requesting an unsupported backend
// falls back to scalar; the backend actually installed is returned.
Backend set_backend(Backend backend);
bool backend_supported(Backend backend);

// sum_i a[i] * b[i]
double dot(const double* a, const double* b, std::size_t n);
// y[i] += alpha * x[i]
void axpy(double alpha, const double* x, double* y, std::size_t n);
// x[i] *= alpha
void scale(double alpha, double* x, std::size_t n);
// max_i |a[i] - b[i]|; 0 for n == 0
double max_abs_diff(const double* a, const double* b, std::size_t n);
// true when every x[i] is finite
bool all_finite(const double* x, std::size_t n);

// Per-backend entry points, exposed for equivalence testing.
namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void scale(double alpha, double* x, std::size_t n);
double max_abs_diff(const double* a, const double* b, std::size_t n);
bool all_finite(const double* x, std::size_t n);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define RLEVAL_HAVE_AVX2_KERNELS 1
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void scale(double alpha, double* x, std::size_t n);
double max_abs_diff(const double* a, const double* b, std::size_t n);
bool all_finite(const double* x, std::size_t n);
}  // namespace avx2
#endif

}  // namespace rleval::simd
