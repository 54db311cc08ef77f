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

#include "rleval/perf_data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string_view>

#include "rleval/error.hpp"

namespace rleval {

namespace {

constexpr std::string_view kSamplesHeader = "algorithm,environment,seed,average_return";
constexpr std::string_view kBoundsHeader = "environment,min_return,max_return";

const std::vector<double>& empty_values() {
  static const std::vector<double> empty;
  return empty;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

double parse_real(std::string_view field, std::size_t line) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty())
    throw ParseError("expected a real number, got '" + std::string(field) + "'", line);
  if (!std::isfinite(value))
    throw ParseError("non-finite value '" + std::string(field) + "'", line);
  return value;
}

std::uint64_t parse_seed(std::string_view field, std::size_t line) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty())
    throw ParseError("expected an unsigned integer seed, got '" + std::string(field) + "'",
                     line);
  return value;
}

}  // namespace

std::optional<std::size_t> PerformanceDataset::algorithm_index(const std::string& name) const {
  auto it = std::find(algorithms_.begin(), algorithms_.end(), name);
  if (it == algorithms_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - algorithms_.begin());
}

std::optional<std::size_t> PerformanceDataset::environment_index(const std::string& name) const {
  auto it = std::find(environments_.begin(), environments_.end(), name);
  if (it == environments_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - environments_.begin());
}

bool PerformanceDataset::has_samples(std::size_t alg, std::size_t env) const {
  return count(alg, env) > 0;
}

std::span<const Sample> PerformanceDataset::samples(std::size_t alg, std::size_t env) const {
  if (alg >= algorithms_.size() || env >= environments_.size()) return {};
  return samples_[cell(alg, env)];
}

const std::vector<double>& PerformanceDataset::values(std::size_t alg, std::size_t env) const {
  if (alg >= algorithms_.size() || env >= environments_.size()) return empty_values();
  return values_[cell(alg, env)];
}

std::size_t PerformanceDataset::count(std::size_t alg, std::size_t env) const {
  return values(alg, env).size();
}

bool PerformanceDataset::complete(std::size_t min_count) const {
  if (algorithms_.empty() || environments_.empty()) return false;
  return this->min_count() >= min_count;
}

std::size_t PerformanceDataset::min_count() const {
  if (values_.empty()) return 0;
  std::size_t m = values_.front().size();
  for (const auto& v : values_) m = std::min(m, v.size());
  return m;
}

std::size_t PerformanceDataset::num_pairs() const {
  return static_cast<std::size_t>(
      std::count_if(values_.begin(), values_.end(), [](const auto& v) { return !v.empty(); }));
}

std::size_t DatasetBuilder::intern(std::vector<std::string>& names, const std::string& name) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it != names.end()) return static_cast<std::size_t>(it - names.begin());
  names.push_back(name);
  return names.size() - 1;
}

DatasetBuilder& DatasetBuilder::set_bounds(const std::string& environment, ReturnBounds bounds) {
  if (!(bounds.min < bounds.max) || !std::isfinite(bounds.min) || !std::isfinite(bounds.max))
    throw ValidationError("environment '" + environment +
                          "': return bounds must satisfy min < max");
  bounds_[environment] = bounds;
  return *this;
}

DatasetBuilder& DatasetBuilder::add_algorithm(const std::string& algorithm) {
  intern(algorithms_, algorithm);
  return *this;
}

DatasetBuilder& DatasetBuilder::add_environment(const std::string& environment) {
  intern(environments_, environment);
  return *this;
}

DatasetBuilder& DatasetBuilder::add(const std::string& algorithm, const std::string& environment,
                                    std::uint64_t seed, double value, std::size_t source_line) {
  if (algorithm.empty()) throw ParseError("empty algorithm name", source_line);
  if (environment.empty()) throw ParseError("empty environment name", source_line);
  const std::size_t alg = intern(algorithms_, algorithm);
  const std::size_t env = intern(environments_, environment);
  rows_.push_back({alg, env, {value, seed}, source_line});
  return *this;
}

PerformanceDataset DatasetBuilder::build() const {
  PerformanceDataset ds;
  ds.algorithms_ = algorithms_;
  ds.environments_ = environments_;
  ds.bounds_.reserve(environments_.size());
  for (const auto& env : environments_) {
    if (auto it = bounds_.find(env); it != bounds_.end()) {
      ds.bounds_.push_back(it->second);
    } else if (auto desc = parse_environment_name(env)) {
      ds.bounds_.push_back(env_return_bounds(*desc));
    } else {
      throw MissingBoundsError(env);
    }
  }

  const std::size_t cells = algorithms_.size() * environments_.size();
  ds.samples_.assign(cells, {});
  std::vector<std::vector<std::size_t>> lines(cells);
  for (const Row& row : rows_) {
    ds.samples_[ds.cell(row.alg, row.env)].push_back(row.sample);
    lines[ds.cell(row.alg, row.env)].push_back(row.line);
  }

  ds.values_.assign(cells, {});
  for (std::size_t alg = 0; alg < algorithms_.size(); ++alg) {
    for (std::size_t env = 0; env < environments_.size(); ++env) {
      const std::size_t c = ds.cell(alg, env);
      auto& s = ds.samples_[c];
      const ReturnBounds b = ds.bounds_[env];
      for (std::size_t t = 0; t < s.size(); ++t) {
        if (s[t].value < b.min || s[t].value > b.max) {
          std::string where = "sample (" + algorithms_[alg] + ", " + environments_[env] +
                              ", " + std::to_string(t + 1) + ")";
          if (lines[c][t] != 0) where += " on line " + std::to_string(lines[c][t]);
          throw ValidationError(where + " = " + format_real(s[t].value) +
                                " lies outside bounds [" + format_real(b.min) + ", " +
                                format_real(b.max) + "]");
        }
      }
      std::sort(s.begin(), s.end(), [](const Sample& x, const Sample& y) {
        return x.value < y.value || (x.value == y.value && x.seed < y.seed);
      });
      auto& v = ds.values_[c];
      v.reserve(s.size());
      for (const Sample& x : s) v.push_back(x.value);
    }
  }
  return ds;
}

ReturnBounds env_return_bounds(const EnvironmentDescriptor& env) {
  const double cutoff = env.episode_cutoff();
  switch (env.family) {
    case EnvironmentFamily::kGridworld:
      // Manhattan distance from the top-left corner to the bottom-right one.
      return {-cutoff, -2.0 * (env.size - 1)};
    case EnvironmentFamily::kChain:
      return {-cutoff, -(env.size - 1.0)};
    case EnvironmentFamily::kMountainCar:
      return {-cutoff, -1.0};
  }
  throw InvalidArgument("unknown environment family");
}

ReturnBounds env_return_bounds(const std::string& environment_name) {
  auto desc = parse_environment_name(environment_name);
  if (!desc) throw InvalidArgument("unknown environment '" + environment_name + "'");
  return env_return_bounds(*desc);
}

std::map<std::string, ReturnBounds> read_bounds_csv(std::istream& in) {
  std::map<std::string, ReturnBounds> out;
  std::string raw;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = strip_cr(raw);
    if (!header_seen) {
      if (line != kBoundsHeader)
        throw ParseError("expected header '" + std::string(kBoundsHeader) + "'", line_no);
      header_seen = true;
      continue;
    }
    if (line.empty()) continue;
    auto f = split_fields(line);
    if (f.size() != 3) throw ParseError("expected 3 fields", line_no);
    if (f[0].empty()) throw ParseError("empty environment name", line_no);
    ReturnBounds b{parse_real(f[1], line_no), parse_real(f[2], line_no)};
    if (!(b.min < b.max))
      throw ValidationError("line " + std::to_string(line_no) + ": min_return must be < max_return");
    out[std::string(f[0])] = b;
  }
  if (!header_seen) throw ParseError("missing header", 1);
  return out;
}

PerformanceDataset ingest_csv(std::istream& samples, std::istream* bounds) {
  DatasetBuilder builder;
  if (bounds != nullptr) {
    for (const auto& [env, b] : read_bounds_csv(*bounds)) builder.set_bounds(env, b);
  }
  std::string raw;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(samples, raw)) {
    ++line_no;
    const std::string_view line = strip_cr(raw);
    if (!header_seen) {
      if (line != kSamplesHeader)
        throw ParseError("expected header '" + std::string(kSamplesHeader) + "'", line_no);
      header_seen = true;
      continue;
    }
    if (line.empty()) continue;
    auto f = split_fields(line);
    if (f.size() != 4)
      throw ParseError("expected 4 fields, got " + std::to_string(f.size()), line_no);
    builder.add(std::string(f[0]), std::string(f[1]), parse_seed(f[2], line_no),
                parse_real(f[3], line_no), line_no);
  }
  if (!header_seen) throw ParseError("missing header", 1);
  return builder.build();
}

std::string format_real(double value) {
  char buf[32];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", value);
  return std::string(buf, static_cast<std::size_t>(n));
}

void write_csv(const PerformanceDataset& dataset, std::ostream& out) {
  out << kSamplesHeader << '\n';
  for (std::size_t i = 0; i < dataset.num_algorithms(); ++i) {
    for (std::size_t j = 0; j < dataset.num_environments(); ++j) {
      for (const Sample& s : dataset.samples(i, j)) {
        out << dataset.algorithms()[i] << ',' << dataset.environments()[j] << ',' << s.seed
            << ',' << format_real(s.value) << '\n';
      }
    }
  }
  if (!out) throw Error("failed writing samples CSV");
}

void write_bounds_csv(const PerformanceDataset& dataset, std::ostream& out) {
  out << kBoundsHeader << '\n';
  for (std::size_t j = 0; j < dataset.num_environments(); ++j) {
    const auto& b = dataset.bounds(j);
    out << dataset.environments()[j] << ',' << format_real(b.min) << ',' << format_real(b.max)
        << '\n';
  }
  if (!out) throw Error("failed writing bounds CSV");
}

}  // namespace rleval
