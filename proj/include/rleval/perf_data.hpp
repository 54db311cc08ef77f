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

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rleval/environment_descriptor.hpp"

namespace rleval {

// Closed interval [min, max] of attainable average returns on an environment.
struct ReturnBounds {
  double min = 0.0;
  double max = 0.0;
  bool operator==(const ReturnBounds&) const = default;
};

// One observed performance value and the seed that produced it.
struct Sample {
  double value = 0.0;
  std::uint64_t seed = 0;
  bool operator==(const Sample&) const = default;
};

// All performance samples for a set of algorithms on a set of environments.
//
// Algorithms and environments keep insertion order. Sample lists are kept
// sorted ascending by value (ties ordered by seed), and each value lies inside
// its environment's bounds. Build through DatasetBuilder or ingest_csv; once
// built the dataset is immutable.
class PerformanceDataset {
 public:
  PerformanceDataset() = default;

  const std::vector<std::string>& algorithms() const { return algorithms_; }
  const std::vector<std::string>& environments() const { return environments_; }
  std::size_t num_algorithms() const { return algorithms_.size(); }
  std::size_t num_environments() const { return environments_.size(); }

  std::optional<std::size_t> algorithm_index(const std::string& name) const;
  std::optional<std::size_t> environment_index(const std::string& name) const;

  const ReturnBounds& bounds(std::size_t env) const { return bounds_.at(env); }

  bool has_samples(std::size_t alg, std::size_t env) const;
  // Sorted samples of algorithm `alg` on environment `env`. Empty if absent.
  std::span<const Sample> samples(std::size_t alg, std::size_t env) const;
  // Just the sorted values.
  const std::vector<double>& values(std::size_t alg, std::size_t env) const;
  std::size_t count(std::size_t alg, std::size_t env) const;

  // True when every (algorithm, environment) pair has at least `min_count`
  // samples.
  bool complete(std::size_t min_count = 1) const;
  // Smallest sample count over all pairs; 0 if any pair is missing.
  std::size_t min_count() const;
  std::size_t num_pairs() const;

  bool operator==(const PerformanceDataset&) const = default;

 private:
  friend class DatasetBuilder;

  std::size_t cell(std::size_t alg, std::size_t env) const {
    return alg * environments_.size() + env;
  }

  std::vector<std::string> algorithms_;
  std::vector<std::string> environments_;
  std::vector<ReturnBounds> bounds_;
  std::vector<std::vector<Sample>> samples_;  // alg-major
  std::vector<std::vector<double>> values_;
};

// Accumulates samples and produces a validated PerformanceDataset.
class DatasetBuilder {
 public:
  DatasetBuilder() = default;

  // Declares bounds for an environment. Must precede build() for every
  // environment that received samples.
  DatasetBuilder& set_bounds(const std::string& environment, ReturnBounds bounds);
  // Registers names without samples so their order is fixed up front.
  DatasetBuilder& add_algorithm(const std::string& algorithm);
  DatasetBuilder& add_environment(const std::string& environment);
  DatasetBuilder& add(const std::string& algorithm, const std::string& environment,
                      std::uint64_t seed, double value, std::size_t source_line = 0);

  // Sorts and validates. For environments without declared bounds, falls back
  // to env_return_bounds when the name is a built-in registry name, otherwise
  // throws MissingBoundsError. Throws ValidationError naming (i, j, t) for a
  // sample outside its bounds.
  PerformanceDataset build() const;

 private:
  struct Row {
    std::size_t alg;
    std::size_t env;
    Sample sample;
    std::size_t line;
  };
  std::size_t intern(std::vector<std::string>& names, const std::string& name);

  std::vector<std::string> algorithms_;
  std::vector<std::string> environments_;
  std::map<std::string, ReturnBounds> bounds_;
  std::vector<Row> rows_;
};

// Return bounds implied by the per-step reward of -1 and the episode cutoff:
// (-cutoff, -shortest path length). Throws InvalidArgument for an unknown
// environment.
ReturnBounds env_return_bounds(const EnvironmentDescriptor& env);
ReturnBounds env_return_bounds(const std::string& environment_name);

// Samples CSV: `algorithm,environment,seed,average_return`.
// Bounds CSV:  `environment,min_return,max_return`.
//
// ingest_csv reads the sample stream and, when given, the bounds sidecar.
PerformanceDataset ingest_csv(std::istream& samples, std::istream* bounds = nullptr);
std::map<std::string, ReturnBounds> read_bounds_csv(std::istream& in);

void write_csv(const PerformanceDataset& dataset, std::ostream& out);
void write_bounds_csv(const PerformanceDataset& dataset, std::ostream& out);

// Shortest round-trippable decimal rendering (17 significant digits).
std::string format_real(double value);

}  // namespace rleval
