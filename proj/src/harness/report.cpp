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


#include "rleval/harness/report.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <ostream>

#include "rleval/alt_bounds.hpp"
#include "rleval/distribution_stats.hpp"
#include "rleval/error.hpp"

namespace rleval::harness {

std::vector<RankInterval> rank_intervals(std::span<const double> lo, std::span<const double> hi) {
  if (lo.size() != hi.size()) throw InvalidArgument("rank intervals: size mismatch");
  const std::size_t n = lo.size();
  std::vector<RankInterval> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    int above = 0;
    int overlapping = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k != i && lo[k] > hi[i]) ++above;
      if (hi[k] >= lo[i]) ++overlapping;
    }
    out[i] = {1 + above, overlapping};
  }
  return out;
}

std::vector<int> point_ranks(std::span<const double> scores, std::span<const std::string> names) {
  if (scores.size() != names.size()) throw InvalidArgument("point ranks: size mismatch");
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return names[a] < names[b];
  });
  std::vector<int> ranks(scores.size());
  for (std::size_t r = 0; r < order.size(); ++r) ranks[order[r]] = static_cast<int>(r + 1);
  return ranks;
}

AggregateIntervals compute_intervals(const PerformanceDataset& dataset,
                                     const EvaluateOptions& options) {
  switch (options.method) {
    case IntervalMethod::kPbp:
      return pbp(dataset, options.delta, options.policy_iteration);
    case IntervalMethod::kPbpT:
      return pbp_t(dataset, options.delta, options.policy_iteration);
    case IntervalMethod::kBootstrap:
      return bootstrap_aggregate(dataset, {options.boot_samples, options.delta, options.seed});
  }
  throw InvalidArgument("unknown interval method");
}

namespace {

EnvironmentTable environment_table(const PerformanceDataset& dataset, std::size_t j,
                                   double delta_prime) {
  const std::size_t A = dataset.num_algorithms();
  EnvironmentTable table;
  table.environment = dataset.environments()[j];
  table.delta_prime = delta_prime;
  std::vector<double> means(A), lo(A), hi(A);
  for (std::size_t i = 0; i < A; ++i) {
    const auto& v = dataset.values(i, j);
    means[i] = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    const MeanBounds b = anderson_mean_return_bounds(CdfBand(EmpiricalCdf(v, dataset.bounds(j)),
                                                             delta_prime));
    lo[i] = std::min(b.lower, means[i]);
    hi[i] = std::max(b.upper, means[i]);
  }
  const auto ranks = point_ranks(means, dataset.algorithms());
  const auto intervals = rank_intervals(lo, hi);
  for (std::size_t i = 0; i < A; ++i)
    table.rows.push_back({dataset.algorithms()[i], means[i], lo[i], hi[i], ranks[i], intervals[i]});
  return table;
}

}  // namespace

AggregateReport evaluate(const PerformanceDataset& dataset, const EvaluateOptions& options) {
  const std::size_t A = dataset.num_algorithms();
  const std::size_t M = dataset.num_environments();
  if (A == 0 || M == 0) throw InvalidArgument("evaluate: empty dataset");
  if (!dataset.complete(2))
    throw ValidationError("evaluate: every (algorithm, environment) pair needs at least two samples");

  AggregateReport report;
  report.method = options.method;
  report.delta = options.delta;
  report.delta_prime = per_pair_delta(options.delta, A, M);

  if (A == 1) {
    // A one-player game is degenerate: the lone algorithm ranks first and
    // its aggregate is its self-comparison.
    const double z = mean_normalized_point(dataset, 0, 0, 0);
    report.rows.push_back({dataset.algorithms()[0], z, 0.0, 1.0, 1, {1, 1}});
    report.warnings.push_back("single algorithm: no game to solve, interval is [0, 1]");
  } else {
    const StrategySpace space(A, M);
    report.game = solve_game(space, normalized_point_matrix(dataset));
    const AggregateIntervals iv = compute_intervals(dataset, options);
    report.converged = iv.converged();
    const auto ranks = point_ranks(report.game.y, dataset.algorithms());
    const auto intervals = rank_intervals(iv.lower, iv.upper);
    for (std::size_t i = 0; i < A; ++i)
      report.rows.push_back({dataset.algorithms()[i], report.game.y[i], iv.lower[i], iv.upper[i],
                             ranks[i], intervals[i]});
    for (std::size_t i = 0; i < iv.lower_runs.size(); ++i) {
      for (const auto* run : {&iv.lower_runs[i], &iv.upper_runs[i]}) {
        if (run->converged) continue;
        char buf[256];
        std::snprintf(buf, sizeof buf,
                      "%s: %s bound hit the iteration cap (%d) with 2*eps*gamma = %.3g",
                      dataset.algorithms()[i].c_str(), run == &iv.lower_runs[i] ? "lower" : "upper",
                      run->iterations, run->eps_aggregate);
        report.warnings.emplace_back(buf);
      }
    }
  }
  if (options.method != IntervalMethod::kPbp)
    report.warnings.push_back(std::string(method_name(options.method)) +
                              ": heuristic intervals at delta' = delta / (|A| |M|) without a "
                              "coverage guarantee");
  for (std::size_t j = 0; j < M; ++j)
    report.environments.push_back(environment_table(dataset, j, report.delta_prime));
  return report;
}

void write_report_csv(const AggregateReport& report, std::ostream& out) {
  out << "algorithm,score,y_lo,y_hi,rank,rank_best,rank_worst\n";
  for (const auto& r : report.rows)
    out << r.algorithm << ',' << format_real(r.score) << ',' << format_real(r.y_lo) << ','
        << format_real(r.y_hi) << ',' << r.rank << ',' << r.rank_interval.best << ','
        << r.rank_interval.worst << '\n';
}

void write_environment_csv(const EnvironmentTable& table, std::ostream& out) {
  out << "algorithm,mean,mean_lo,mean_hi,rank,rank_best,rank_worst\n";
  for (const auto& r : table.rows)
    out << r.algorithm << ',' << format_real(r.mean) << ',' << format_real(r.mean_lo) << ','
        << format_real(r.mean_hi) << ',' << r.rank << ',' << r.rank_interval.best << ','
        << r.rank_interval.worst << '\n';
}

void write_warnings_csv(const AggregateReport& report, std::ostream& out) {
  out << "warning\n";
  for (const auto& w : report.warnings) {
    std::string quoted = "\"";
    for (char c : w) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
    out << quoted << "\"\n";
  }
}

void write_report_text(const AggregateReport& report, std::ostream& out) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "method %s, delta %.4g, delta' %.4g\n",
                std::string(method_name(report.method)).c_str(), report.delta,
                report.delta_prime);
  out << buf;
  std::vector<const AlgorithmRow*> rows;
  for (const auto& r : report.rows) rows.push_back(&r);
  std::sort(rows.begin(), rows.end(), [](auto* a, auto* b) { return a->rank < b->rank; });
  std::snprintf(buf, sizeof buf, "%-24s %-26s %s\n", "algorithm", "score (lo, hi)", "rank");
  out << buf;
  for (const auto* r : rows) {
    char cell[64];
    std::snprintf(cell, sizeof cell, "%.4f (%.4f, %.4f)", r->score, r->y_lo, r->y_hi);
    std::snprintf(buf, sizeof buf, "%-24s %-26s %d (%d, %d)\n", r->algorithm.c_str(), cell,
                  r->rank, r->rank_interval.worst, r->rank_interval.best);
    out << buf;
  }
  for (const auto& t : report.environments) {
    out << '\n' << t.environment << '\n';
    std::vector<const EnvironmentRow*> erows;
    for (const auto& r : t.rows) erows.push_back(&r);
    std::sort(erows.begin(), erows.end(), [](auto* a, auto* b) { return a->rank < b->rank; });
    for (const auto* r : erows) {
      char cell[96];
      std::snprintf(cell, sizeof cell, "%.1f (%.1f, %.1f)", r->mean, r->mean_lo, r->mean_hi);
      std::snprintf(buf, sizeof buf, "%-24s %-30s %d (%d, %d)\n", r->algorithm.c_str(), cell,
                    r->rank, r->rank_interval.worst, r->rank_interval.best);
      out << buf;
    }
  }
  for (const auto& w : report.warnings) out << "warning: " << w << '\n';
}

}  // namespace rleval::harness
