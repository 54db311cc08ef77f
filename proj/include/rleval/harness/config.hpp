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

// Experiment configuration: a flat `key = value` text format. Lists are
// comma separated, `#` starts a comment.
//
//   algorithms = sarsa_lambda, q_lambda
//   environments = gridworld5d, chain10d
//   trials = 30
//   delta = 0.05
//   method = pbp

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rleval::harness {

enum class IntervalMethod { kPbp, kPbpT, kBootstrap };

std::string_view method_name(IntervalMethod method);
std::optional<IntervalMethod> parse_method(std::string_view name);

struct ExperimentConfig {
  std::vector<std::string> algorithms;
  std::vector<std::string> environments;
  std::size_t trials = 10;
  std::uint64_t seed = 0;
  double delta = 0.05;
  IntervalMethod method = IntervalMethod::kPbp;
  std::size_t boot_samples = 2000;
  std::string out_dir = ".";
  int episodes = 100;
  int mountain_car_cutoff = 5000;
  // Extra evenly spaced alpha levels in the quantile plot data.
  std::size_t quantile_grid = 99;
  // Failure-rate experiment.
  std::vector<IntervalMethod> frexp_methods = {IntervalMethod::kPbp, IntervalMethod::kPbpT,
                                               IntervalMethod::kBootstrap};
  std::vector<std::size_t> frexp_sizes = {10, 30, 100};
  std::size_t frexp_replicates = 100;

  // Throws InvalidArgument on out-of-range values or unknown names.
  void validate() const;
};

// Defaults: every built-in algorithm on the eight discrete environments.
ExperimentConfig default_config();

// Applies `key = value` lines on top of `base`. Throws ParseError naming the
// line for unknown keys or malformed values.
ExperimentConfig parse_config(std::istream& in, ExperimentConfig base = default_config());
ExperimentConfig load_config(const std::string& path, ExperimentConfig base = default_config());

}  // namespace rleval::harness
