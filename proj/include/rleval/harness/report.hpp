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

// Evaluation reports: point aggregate, confidence intervals by the chosen
// method, ranks and rank intervals, plus per-environment mean-return tables.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rleval/game.hpp"
#include "rleval/harness/config.hpp"
#include "rleval/pbp.hpp"
#include "rleval/perf_data.hpp"

namespace rleval::harness {

struct RankInterval {
  int best = 1;
  int worst = 1;
  bool operator==(const RankInterval&) const = default;
};

// best(i) = 1 + #{k != i : lo_k > hi_i}, worst(i) = #{k : hi_k >= lo_i}.
std::vector<RankInterval> rank_intervals(std::span<const double> lo, std::span<const double> hi);

// 1-based ranks by descending score; equal scores are ordered by name.
std::vector<int> point_ranks(std::span<const double> scores, std::span<const std::string> names);

struct AlgorithmRow {
  std::string algorithm;
  double score = 0.0;
  double y_lo = 0.0;
  double y_hi = 0.0;
  int rank = 0;
  RankInterval rank_interval;
};

struct EnvironmentRow {
  std::string algorithm;
  double mean = 0.0;
  double mean_lo = 0.0;
  double mean_hi = 0.0;
  int rank = 0;
  RankInterval rank_interval;
};

struct EnvironmentTable {
  std::string environment;
  double delta_prime = 0.0;
  std::vector<EnvironmentRow> rows;
};

struct AggregateReport {
  IntervalMethod method = IntervalMethod::kPbp;
  double delta = 0.0;
  double delta_prime = 0.0;
  std::vector<AlgorithmRow> rows;  // dataset algorithm order
  std::vector<EnvironmentTable> environments;
  std::vector<std::string> warnings;
  GameSolution game;
  bool converged = true;
};

struct EvaluateOptions {
  double delta = 0.05;
  IntervalMethod method = IntervalMethod::kPbp;
  std::size_t boot_samples = 2000;
  std::uint64_t seed = 0;
  PolicyIterationOptions policy_iteration;
};

// Intervals only, for the chosen method.
AggregateIntervals compute_intervals(const PerformanceDataset& dataset,
                                     const EvaluateOptions& options);

AggregateReport evaluate(const PerformanceDataset& dataset, const EvaluateOptions& options);

// CSV writers. Real values use the round-trippable 17-digit rendering.
void write_report_csv(const AggregateReport& report, std::ostream& out);
void write_environment_csv(const EnvironmentTable& table, std::ostream& out);
void write_warnings_csv(const AggregateReport& report, std::ostream& out);
// Human-readable summary with "rank (worst, best)" columns.
void write_report_text(const AggregateReport& report, std::ostream& out);

}  // namespace rleval::harness
