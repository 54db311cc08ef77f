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

// One complete training execution: sample hyperparameters, perturb the
// environment, train for a fixed number of episodes and report the mean
// episode return.

#include <cstdint>

#include "rleval/environment_descriptor.hpp"
#include "rleval/rl/hyperparameters.hpp"

namespace rleval::rl {

inline constexpr int kDefaultEpisodes = 100;

struct TrialResult {
  double average_return = 0.0;
  bool diverged = false;
  HyperparameterDraw hyperparameters;
};

// Independent streams derive_seed(seed, tag) for the tags "hyperparameters",
// "perturbation", "environment" and "agent". Pure function of its arguments.
TrialResult run_trial_detailed(const AlgorithmDefinition& algorithm,
                               const EnvironmentDescriptor& env, std::uint64_t seed,
                               int episodes = kDefaultEpisodes);
double run_trial(const AlgorithmDefinition& algorithm, const EnvironmentDescriptor& env,
                 std::uint64_t seed, int episodes = kDefaultEpisodes);

}  // namespace rleval::rl
