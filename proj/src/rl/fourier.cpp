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


#include "rleval/rl/fourier.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "rleval/error.hpp"

namespace rleval::rl {

namespace {

std::vector<std::vector<int>> enumerate(std::size_t dims, int dorder, int iorder) {
  std::vector<std::vector<int>> out;
  std::set<std::vector<int>> seen;
  std::vector<int> c(dims, 0);
  // Odometer over {0..dorder}^dims; the all-zero vector is emitted first.
  for (;;) {
    if (seen.insert(c).second) out.push_back(c);
    std::size_t d = 0;
    while (d < dims && c[d] == dorder) c[d++] = 0;
    if (d == dims) break;
    ++c[d];
  }
  for (std::size_t d = 0; d < dims; ++d)
    for (int k = 1; k <= iorder; ++k) {
      std::vector<int> axis(dims, 0);
      axis[d] = k;
      if (seen.insert(axis).second) out.push_back(axis);
    }
  return out;
}

}  // namespace

std::size_t fourier_feature_count(std::size_t dims, int dorder, int iorder) {
  if (dims == 0 || dorder < 0 || iorder < 0) throw InvalidArgument("invalid Fourier basis orders");
  std::size_t coupled = 1;
  for (std::size_t d = 0; d < dims; ++d) coupled *= static_cast<std::size_t>(dorder + 1);
  const std::size_t extra =
      iorder > dorder ? dims * static_cast<std::size_t>(iorder - dorder) : 0;
  return coupled + extra;
}

int truncate_dorder(std::size_t dims, int dorder) {
  while (dorder > 0) {
    double coupled = std::pow(static_cast<double>(dorder + 1), static_cast<double>(dims));
    if (coupled <= static_cast<double>(kMaxFourierFeatures)) break;
    --dorder;
  }
  return dorder;
}

FourierBasis::FourierBasis(std::size_t dims, int dorder, int iorder)
    : dims_(dims), dorder_(dorder), iorder_(iorder) {
  if (fourier_feature_count(dims, dorder, iorder) > kMaxFourierFeatures)
    throw InvalidArgument("Fourier basis exceeds the feature cap");
  for (const auto& c : enumerate(dims, dorder, iorder))
    coefficients_.insert(coefficients_.end(), c.begin(), c.end());
}

void FourierBasis::evaluate(std::span<const double> state, std::span<double> out) const {
  if (state.size() != dims_ || out.size() != size())
    throw InvalidArgument("Fourier basis: dimension mismatch");
  for (double s : state)
    if (!(s >= 0.0 && s <= 1.0)) throw InvalidArgument("Fourier basis: state outside [0, 1]");
  for (std::size_t f = 0; f < size(); ++f) {
    const int* c = coefficients_.data() + f * dims_;
    double dot = 0.0;
    for (std::size_t d = 0; d < dims_; ++d) dot += c[d] * state[d];
    out[f] = std::cos(std::numbers::pi * dot);
  }
}

std::vector<double> FourierBasis::evaluate(std::span<const double> state) const {
  std::vector<double> out(size());
  evaluate(state, out);
  return out;
}

}  // namespace rleval::rl
