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

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "rleval/simd/kernels.hpp"

namespace rleval::simd {

namespace {

struct KernelTable {
  Backend backend;
  double (*dot)(const double*, const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*scale)(double, double*, std::size_t);
  double (*max_abs_diff)(const double*, const double*, std::size_t);
  bool (*all_finite)(const double*, std::size_t);
};

constexpr KernelTable kScalarTable{Backend::kScalar, scalar::dot,          scalar::axpy,
                                   scalar::scale,    scalar::max_abs_diff, scalar::all_finite};
#ifdef RLEVAL_HAVE_AVX2_KERNELS
constexpr KernelTable kAvx2Table{Backend::kAvx2, avx2::dot,          avx2::axpy,
                                 avx2::scale,    avx2::max_abs_diff, avx2::all_finite};
#endif

const KernelTable* table_for(Backend backend) {
#ifdef RLEVAL_HAVE_AVX2_KERNELS
  if (backend == Backend::kAvx2 && backend_supported(Backend::kAvx2)) return &kAvx2Table;
#endif
  (void)backend;
  return &kScalarTable;
}

// RLEVAL_SIMD=scalar pins the reference kernels.
const KernelTable* initial_table() {
  if (const char* env = std::getenv("RLEVAL_SIMD"); env != nullptr && std::strcmp(env, "scalar") == 0)
    return &kScalarTable;
  return table_for(detect_backend());
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

}  // namespace

std::string_view backend_name(Backend backend) {
  switch (backend) {
    case Backend::kScalar:
      return "scalar";
    case Backend::kAvx2:
      return "avx2";
  }
  return "unknown";
}

bool backend_supported(Backend backend) {
  switch (backend) {
    case Backend::kScalar:
      return true;
    case Backend::kAvx2:
#if defined(RLEVAL_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Backend detect_backend() {
  return backend_supported(Backend::kAvx2) ? Backend::kAvx2 : Backend::kScalar;
}

Backend active_backend() { return current().load(std::memory_order_relaxed)->backend; }

Backend set_backend(Backend backend) {
  const KernelTable* t = table_for(backend);
  current().store(t, std::memory_order_relaxed);
  return t->backend;
}

double dot(const double* a, const double* b, std::size_t n) {
  return current().load(std::memory_order_relaxed)->dot(a, b, n);
}
void axpy(double alpha, const double* x, double* y, std::size_t n) {
  current().load(std::memory_order_relaxed)->axpy(alpha, x, y, n);
}
void scale(double alpha, double* x, std::size_t n) {
  current().load(std::memory_order_relaxed)->scale(alpha, x, n);
}
double max_abs_diff(const double* a, const double* b, std::size_t n) {
  return current().load(std::memory_order_relaxed)->max_abs_diff(a, b, n);
}
bool all_finite(const double* x, std::size_t n) {
  return current().load(std::memory_order_relaxed)->all_finite(x, n);
}

}  // namespace rleval::simd
