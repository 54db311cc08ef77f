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


// rleval: collect performance data, evaluate it, emit plot data and run the
// interval failure-rate experiment.
//
// Exit codes: 0 ok, 1 usage, 2 bad data or config, 3 solver did not converge
// (the report is still written, with the warning rows).

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "rleval/error.hpp"
#include "rleval/harness/collect.hpp"
#include "rleval/harness/config.hpp"
#include "rleval/harness/frexp.hpp"
#include "rleval/harness/report.hpp"
#include "rleval/perf_data.hpp"

namespace fs = std::filesystem;
using namespace rleval;
using namespace rleval::harness;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitSolver = 3;

// Options shared by every subcommand. Command-line values win over the
// config file, which wins over the built-in defaults.
struct CommonArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<double> delta;
  std::optional<std::string> method;
  std::optional<std::size_t> trials;
  std::optional<std::size_t> boot_samples;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
  cmd->add_option("--config", a.config, "key = value configuration file")->check(CLI::ExistingFile);
  cmd->add_option("--seed", a.seed, "master seed");
  cmd->add_option("--out", a.out, "output directory");
  cmd->add_option("--delta", a.delta, "total failure probability");
  cmd->add_option("--method", a.method, "interval method")
      ->check(CLI::IsMember({"pbp", "pbp_t", "bootstrap"}));
  cmd->add_option("--trials", a.trials, "trials per (algorithm, environment) pair");
  cmd->add_option("--boot-samples", a.boot_samples, "bootstrap resamples");
}

ExperimentConfig resolve(const CommonArgs& a) {
  ExperimentConfig cfg = a.config.empty() ? default_config() : load_config(a.config);
  if (a.seed) cfg.seed = *a.seed;
  if (a.out) cfg.out_dir = *a.out;
  if (a.delta) cfg.delta = *a.delta;
  if (a.method) cfg.method = *parse_method(*a.method);
  if (a.trials) cfg.trials = *a.trials;
  if (a.boot_samples) cfg.boot_samples = *a.boot_samples;
  cfg.validate();
  return cfg;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  return out;
}

// Reads samples and, when given, declared bounds. Missing bounds files fall
// back to the built-in registry inside ingest_csv.
PerformanceDataset load_dataset(const std::string& samples, const std::string& bounds) {
  std::ifstream in(samples, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read " + samples);
  if (bounds.empty()) return ingest_csv(in);
  std::ifstream b(bounds, std::ios::binary);
  if (!b) throw InvalidArgument("cannot read " + bounds);
  return ingest_csv(in, &b);
}

std::string default_bounds(const std::string& samples) {
  const fs::path p = fs::path(samples).parent_path() / "bounds.csv";
  return fs::exists(p) ? p.string() : std::string();
}

int run_collect(const CommonArgs& a) {
  const ExperimentConfig cfg = resolve(a);
  const PerformanceDataset data = collect(cfg);
  fs::create_directories(cfg.out_dir);
  auto samples = open_out(fs::path(cfg.out_dir) / "samples.csv");
  write_csv(data, samples);
  auto bounds = open_out(fs::path(cfg.out_dir) / "bounds.csv");
  write_bounds_csv(data, bounds);
  std::cout << "wrote " << data.num_pairs() << " pairs x " << cfg.trials << " trials to "
            << cfg.out_dir << "\n";
  return kExitOk;
}

int run_evaluate(const CommonArgs& a, std::string samples, std::string bounds) {
  const ExperimentConfig cfg = resolve(a);
  if (samples.empty()) samples = (fs::path(cfg.out_dir) / "samples.csv").string();
  if (bounds.empty()) bounds = default_bounds(samples);
  const PerformanceDataset data = load_dataset(samples, bounds);

  EvaluateOptions opt;
  opt.delta = cfg.delta;
  opt.method = cfg.method;
  opt.boot_samples = cfg.boot_samples;
  opt.seed = cfg.seed;
  const AggregateReport report = evaluate(data, opt);

  const fs::path out(cfg.out_dir);
  fs::create_directories(out);
  auto csv = open_out(out / "aggregate_report.csv");
  write_report_csv(report, csv);
  for (const auto& table : report.environments) {
    auto f = open_out(out / ("env_table_" + table.environment + ".csv"));
    write_environment_csv(table, f);
  }
  auto warn = open_out(out / "warnings.csv");
  write_warnings_csv(report, warn);
  auto txt = open_out(out / "report.txt");
  write_report_text(report, txt);
  write_report_text(report, std::cout);
  return report.converged ? kExitOk : kExitSolver;
}

int run_plotdata(const CommonArgs& a, std::string samples, std::string bounds) {
  const ExperimentConfig cfg = resolve(a);
  if (samples.empty()) samples = (fs::path(cfg.out_dir) / "samples.csv").string();
  if (bounds.empty()) bounds = default_bounds(samples);
  const PerformanceDataset data = load_dataset(samples, bounds);
  const double delta_prime =
      cfg.delta / static_cast<double>(data.num_algorithms() * data.num_environments());

  const fs::path out(cfg.out_dir);
  fs::create_directories(out);
  for (std::size_t j = 0; j < data.num_environments(); ++j) {
    const std::string& env = data.environments()[j];
    for (std::size_t i = 0; i < data.num_algorithms(); ++i) {
      if (!data.has_samples(i, j)) continue;
      auto f = open_out(out / ("quantile_" + data.algorithms()[i] + "_" + env + ".csv"));
      write_quantile_csv(quantile_plot_data(data, i, j, delta_prime, cfg.quantile_grid), f);
    }
    auto f = open_out(out / ("cdf_" + env + ".csv"));
    write_cdf_csv(data, cdf_plot_data(data, j, delta_prime), f);
  }
  return kExitOk;
}

int run_frexp(const CommonArgs& a, std::optional<std::size_t> replicates) {
  const ExperimentConfig cfg = resolve(a);
  FailureRateOptions opt;
  opt.methods = cfg.frexp_methods;
  if (a.method) opt.methods = {cfg.method};
  opt.sizes = cfg.frexp_sizes;
  if (a.trials) opt.sizes = {cfg.trials};
  opt.replicates = replicates.value_or(cfg.frexp_replicates);
  opt.delta = cfg.delta;
  opt.boot_samples = cfg.boot_samples;
  opt.seed = cfg.seed;
  const auto rows = failure_rate_experiment(default_synthetic_truth(), opt);

  const fs::path out(cfg.out_dir);
  fs::create_directories(out);
  auto f = open_out(out / "frexp_results.csv");
  write_failure_rate_csv(rows, f);
  write_failure_rate_csv(rows, std::cout);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Performance-percentile evaluation of reinforcement learning algorithms"};
  app.require_subcommand(1);

  CommonArgs collect_args, eval_args, plot_args, frexp_args;
  std::string eval_samples, eval_bounds, plot_samples, plot_bounds;
  std::optional<std::size_t> replicates;

  auto* c = app.add_subcommand("collect", "run every algorithm on every environment");
  add_common(c, collect_args);
  auto* e = app.add_subcommand("evaluate", "aggregate scores, intervals and ranks");
  add_common(e, eval_args);
  e->add_option("--samples", eval_samples, "samples CSV (default <out>/samples.csv)");
  e->add_option("--bounds", eval_bounds, "bounds CSV (default: next to the samples)");
  auto* p = app.add_subcommand("plotdata", "quantile and CDF plot tables");
  add_common(p, plot_args);
  p->add_option("--samples", plot_samples, "samples CSV (default <out>/samples.csv)");
  p->add_option("--bounds", plot_bounds, "bounds CSV (default: next to the samples)");
  auto* f = app.add_subcommand("frexp", "interval failure rates on synthetic ground truth");
  add_common(f, frexp_args);
  f->add_option("--replicates", replicates, "replicates per sample size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (c->parsed()) return run_collect(collect_args);
    if (e->parsed()) return run_evaluate(eval_args, eval_samples, eval_bounds);
    if (p->parsed()) return run_plotdata(plot_args, plot_samples, plot_bounds);
    if (f->parsed()) return run_frexp(frexp_args, replicates);
  } catch (const ParseError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitData;
  } catch (const ValidationError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitData;
  } catch (const ConvergenceError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitSolver;
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
