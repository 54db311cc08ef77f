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


#include "rleval/harness/config.hpp"

#include <charconv>
#include <fstream>
#include <istream>

#include "rleval/environment_descriptor.hpp"
#include "rleval/error.hpp"
#include "rleval/rl/hyperparameters.hpp"

namespace rleval::harness {

std::string_view method_name(IntervalMethod method) {
  switch (method) {
    case IntervalMethod::kPbp:
      return "pbp";
    case IntervalMethod::kPbpT:
      return "pbp_t";
    case IntervalMethod::kBootstrap:
      return "bootstrap";
  }
  return "unknown";
}

std::optional<IntervalMethod> parse_method(std::string_view name) {
  for (auto m : {IntervalMethod::kPbp, IntervalMethod::kPbpT, IntervalMethod::kBootstrap})
    if (method_name(m) == name) return m;
  return std::nullopt;
}

ExperimentConfig default_config() {
  ExperimentConfig cfg;
  cfg.algorithms = rl::builtin_algorithm_names();
  for (const auto& name : builtin_environment_names())
    if (name != "mountaincar") cfg.environments.push_back(name);
  return cfg;
}

void ExperimentConfig::validate() const {
  if (algorithms.empty()) throw InvalidArgument("config: no algorithms");
  if (environments.empty()) throw InvalidArgument("config: no environments");
  for (const auto& a : algorithms)
    if (!rl::parse_algorithm_name(a)) throw InvalidArgument("config: unknown algorithm '" + a + "'");
  for (const auto& e : environments)
    if (!parse_environment_name(e)) throw InvalidArgument("config: unknown environment '" + e + "'");
  if (trials < 1) throw InvalidArgument("config: trials must be positive");
  if (!(delta > 0.0 && delta <= 0.5)) throw InvalidArgument("config: delta must lie in (0, 0.5]");
  if (boot_samples < 100) throw InvalidArgument("config: boot_samples must be at least 100");
  if (episodes < 1) throw InvalidArgument("config: episodes must be positive");
  if (mountain_car_cutoff < 1) throw InvalidArgument("config: mountain_car_cutoff must be positive");
  if (frexp_replicates < 1) throw InvalidArgument("config: frexp_replicates must be positive");
  for (std::size_t s : frexp_sizes)
    if (s < 2) throw InvalidArgument("config: frexp sizes must be at least 2");
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  while (!s.empty()) {
    const auto comma = s.find(',');
    const auto item = trim(s.substr(0, comma));
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

template <class T>
T parse_number(std::string_view s, std::size_t line, std::string_view key) {
  T value{};
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, value);
  if (res.ec != std::errc() || res.ptr != end)
    throw ParseError("config: bad value for '" + std::string(key) + "'", line);
  return value;
}

}  // namespace

ExperimentConfig parse_config(std::istream& in, ExperimentConfig cfg) {
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view text = raw;
    if (const auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
    text = trim(text);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw ParseError("config: expected 'key = value'", line);
    const auto key = trim(text.substr(0, eq));
    const auto value = trim(text.substr(eq + 1));
    if (key == "algorithms") {
      cfg.algorithms = split_list(value);
    } else if (key == "environments") {
      cfg.environments = split_list(value);
    } else if (key == "trials") {
      cfg.trials = parse_number<std::size_t>(value, line, key);
    } else if (key == "seed") {
      cfg.seed = parse_number<std::uint64_t>(value, line, key);
    } else if (key == "delta") {
      cfg.delta = parse_number<double>(value, line, key);
    } else if (key == "method") {
      const auto m = parse_method(value);
      if (!m) throw ParseError("config: unknown method '" + std::string(value) + "'", line);
      cfg.method = *m;
    } else if (key == "boot_samples") {
      cfg.boot_samples = parse_number<std::size_t>(value, line, key);
    } else if (key == "out") {
      cfg.out_dir = std::string(value);
    } else if (key == "episodes") {
      cfg.episodes = parse_number<int>(value, line, key);
    } else if (key == "mountain_car_cutoff") {
      cfg.mountain_car_cutoff = parse_number<int>(value, line, key);
    } else if (key == "quantile_grid") {
      cfg.quantile_grid = parse_number<std::size_t>(value, line, key);
    } else if (key == "frexp_methods") {
      cfg.frexp_methods.clear();
      for (const auto& name : split_list(value)) {
        const auto m = parse_method(name);
        if (!m) throw ParseError("config: unknown method '" + name + "'", line);
        cfg.frexp_methods.push_back(*m);
      }
    } else if (key == "frexp_sizes") {
      cfg.frexp_sizes.clear();
      for (const auto& s : split_list(value))
        cfg.frexp_sizes.push_back(parse_number<std::size_t>(s, line, key));
    } else if (key == "frexp_replicates") {
      cfg.frexp_replicates = parse_number<std::size_t>(value, line, key);
    } else {
      throw ParseError("config: unknown key '" + std::string(key) + "'", line);
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file '" + path + "'");
  return parse_config(in, std::move(base));
}

}  // namespace rleval::harness
