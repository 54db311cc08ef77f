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

// Fourier cosine basis over states normalized to [0, 1]^m.

#include <cstddef>
#include <span>
#include <vector>

namespace rleval::rl {

inline constexpr std::size_t kMaxFourierFeatures = 10000;

class FourierBasis {
 public:
  // Coefficient vectors: every c in {0..dorder}^m (coupled terms) plus the
  // axis-aligned vectors k * e_d for k = 1..iorder, duplicates removed. The
  // constant term comes first. Throws InvalidArgument when the basis would
  // exceed kMaxFourierFeatures.
  FourierBasis(std::size_t dims, int dorder, int iorder);

  std::size_t dims() const { return dims_; }
  std::size_t size() const { return coefficients_.size() / dims_; }
  int dorder() const { return dorder_; }
  int iorder() const { return iorder_; }
  std::span<const int> coefficient(std::size_t f) const {
    return {coefficients_.data() + f * dims_, dims_};
  }

  // out[f] = cos(pi * c_f . state). Throws InvalidArgument for a state
  // component outside [0, 1].
  void evaluate(std::span<const double> state, std::span<double> out) const;
  std::vector<double> evaluate(std::span<const double> state) const;

 private:
  std::size_t dims_;
  int dorder_;
  int iorder_;
  std::vector<int> coefficients_;
};

// Number of features FourierBasis(dims, dorder, iorder) generates.
std::size_t fourier_feature_count(std::size_t dims, int dorder, int iorder);

// Largest dorder <= requested whose coupled terms alone stay within the cap.
int truncate_dorder(std::size_t dims, int dorder);

}  // namespace rleval::rl
