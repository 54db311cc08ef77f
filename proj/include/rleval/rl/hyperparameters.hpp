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

// Complete algorithm definitions: each algorithm samples its own
// hyperparameters from fixed distributions, so its only input is the
// environment's meta-information.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rleval/rng.hpp"

namespace rleval::rl {

enum class AlgorithmFamily { kSarsaLambda, kQLambda, kActorCritic };

struct AlgorithmDefinition {
  AlgorithmFamily family = AlgorithmFamily::kSarsaLambda;
  // Scaled variants divide continuous-state step sizes by the feature count.
  bool scaled = false;

  std::string name() const;
  bool operator==(const AlgorithmDefinition&) const = default;
};

std::optional<AlgorithmDefinition> parse_algorithm_name(std::string_view name);
// The six registry names, in canonical order.
const std::vector<std::string>& builtin_algorithm_names();

struct HyperparameterDraw {
  double lambda = 0.0;
  double gamma = 0.0;    // the algorithm's discount, 1 - e^{U(ln 1e-4, ln 0.05)}
  double epsilon = 0.0;  // exploration rate for Sarsa and Q
  double alpha_q = 0.0;  // action-value step size
  double alpha_v = 0.0;  // critic step size
  double alpha_p = 0.0;  // actor step size
  // Fourier basis orders; meaningful for continuous states only.
  int dorder = 0;
  int iorder = 0;
  std::size_t num_features = 0;
};

struct EnvironmentMeta {
  bool discrete = true;
  std::size_t state_dims = 0;  // number of tabular states, or state dimension
  int num_actions = 0;
};

// Every field is drawn in a fixed order regardless of family or state kind,
// so the stream layout never depends on the algorithm:
//   lambda ~ U(0, 1), gamma, epsilon ~ U(0, 1), dorder ~ U{0..9},
//   iorder ~ U{1..9}, then the two step-size draws.
// Discrete: every step size ~ e^{U(ln 1e-3, ln 1e-1)} (scaled variants are
// identical). Continuous: e^{U(ln 1e-6, ln 1e-3)}, or for scaled variants
// e^{U(ln 1e-3, ln 1)} / |phi| with the actor step also divided by the
// number of actions.
HyperparameterDraw sample_hyperparameters(const AlgorithmDefinition& algorithm,
                                          const EnvironmentMeta& env, Rng& rng);

}  // namespace rleval::rl
