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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rleval {

enum class EnvironmentFamily { kGridworld, kChain, kMountainCar };

// Static description of a built-in environment. Perturbation seeds are not
// part of the descriptor; they are derived per trial.
struct EnvironmentDescriptor {
  EnvironmentFamily family = EnvironmentFamily::kGridworld;
  int size = 5;  // N for gridworld/chain, unused for mountain car
  bool stochastic = false;
  int mountain_car_cutoff = 5000;

  // Registry name, e.g. "gridworld5d", "chain50s", "mountaincar".
  std::string name() const;
  // Hard episode step limit.
  int episode_cutoff() const;
  bool discrete() const { return family != EnvironmentFamily::kMountainCar; }

  bool operator==(const EnvironmentDescriptor&) const = default;
};

// Parses a registry name. Returns nullopt for names that are not built-in.
std::optional<EnvironmentDescriptor> parse_environment_name(std::string_view name);

// The nine registry names, in canonical order.
const std::vector<std::string>& builtin_environment_names();

}  // namespace rleval
