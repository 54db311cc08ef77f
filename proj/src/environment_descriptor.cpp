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

#include "rleval/environment_descriptor.hpp"

#include <charconv>

namespace rleval {

std::string EnvironmentDescriptor::name() const {
  switch (family) {
    case EnvironmentFamily::kGridworld:
      return "gridworld" + std::to_string(size) + (stochastic ? "s" : "d");
    case EnvironmentFamily::kChain:
      return "chain" + std::to_string(size) + (stochastic ? "s" : "d");
    case EnvironmentFamily::kMountainCar:
      return "mountaincar";
  }
  return {};
}

int EnvironmentDescriptor::episode_cutoff() const {
  switch (family) {
    case EnvironmentFamily::kGridworld:
      return 20 * size * size;
    case EnvironmentFamily::kChain:
      return 20 * size;
    case EnvironmentFamily::kMountainCar:
      return mountain_car_cutoff;
  }
  return 0;
}

std::optional<EnvironmentDescriptor> parse_environment_name(std::string_view name) {
  if (name == "mountaincar") {
    EnvironmentDescriptor d;
    d.family = EnvironmentFamily::kMountainCar;
    d.size = 0;
    return d;
  }
  EnvironmentDescriptor d;
  std::string_view rest;
  if (name.starts_with("gridworld")) {
    d.family = EnvironmentFamily::kGridworld;
    rest = name.substr(9);
  } else if (name.starts_with("chain")) {
    d.family = EnvironmentFamily::kChain;
    rest = name.substr(5);
  } else {
    return std::nullopt;
  }
  if (rest.size() < 2) return std::nullopt;
  const char kind = rest.back();
  if (kind != 'd' && kind != 's') return std::nullopt;
  d.stochastic = kind == 's';
  rest.remove_suffix(1);
  int n = 0;
  auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), n);
  if (ec != std::errc{} || ptr != rest.data() + rest.size() || n < 2) return std::nullopt;
  d.size = n;
  return d;
}

const std::vector<std::string>& builtin_environment_names() {
  static const std::vector<std::string> names = {
      "gridworld5d", "gridworld5s", "gridworld10d", "gridworld10s", "chain10d",
      "chain10s",    "chain50d",    "chain50s",     "mountaincar"};
  return names;
}

}  // namespace rleval
