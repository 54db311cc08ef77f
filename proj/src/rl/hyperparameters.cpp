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


#include "rleval/rl/hyperparameters.hpp"

#include <cmath>

#include "rleval/rl/fourier.hpp"

namespace rleval::rl {

std::string AlgorithmDefinition::name() const {
  std::string base;
  switch (family) {
    case AlgorithmFamily::kSarsaLambda:
      base = "sarsa_lambda";
      break;
    case AlgorithmFamily::kQLambda:
      base = "q_lambda";
      break;
    case AlgorithmFamily::kActorCritic:
      base = "actor_critic";
      break;
  }
  return scaled ? base + "_scaled" : base;
}

const std::vector<std::string>& builtin_algorithm_names() {
  static const std::vector<std::string> names = {
      "sarsa_lambda", "sarsa_lambda_scaled", "q_lambda",
      "q_lambda_scaled", "actor_critic", "actor_critic_scaled"};
  return names;
}

std::optional<AlgorithmDefinition> parse_algorithm_name(std::string_view name) {
  for (auto family : {AlgorithmFamily::kSarsaLambda, AlgorithmFamily::kQLambda,
                      AlgorithmFamily::kActorCritic})
    for (bool scaled : {false, true}) {
      const AlgorithmDefinition def{family, scaled};
      if (def.name() == name) return def;
    }
  return std::nullopt;
}

HyperparameterDraw sample_hyperparameters(const AlgorithmDefinition& algorithm,
                                          const EnvironmentMeta& env, Rng& rng) {
  HyperparameterDraw h;
  h.lambda = rng.uniform();
  h.gamma = 1.0 - rng.log_uniform(1e-4, 0.05);
  h.epsilon = rng.uniform();
  const int dorder = rng.integer(0, 9);
  const int iorder = rng.integer(1, 9);
  const double u1 = rng.uniform();
  const double u2 = rng.uniform();
  auto log_u = [](double u, double lo, double hi) {
    return std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * u);
  };

  if (env.discrete) {
    h.num_features = env.state_dims;
    h.alpha_q = h.alpha_v = log_u(u1, 1e-3, 1e-1);
    h.alpha_p = log_u(u2, 1e-3, 1e-1);
    return h;
  }
  h.dorder = truncate_dorder(env.state_dims, dorder);
  h.iorder = iorder;
  h.num_features = fourier_feature_count(env.state_dims, h.dorder, h.iorder);
  if (algorithm.scaled) {
    const double phi = static_cast<double>(h.num_features);
    h.alpha_q = h.alpha_v = log_u(u1, 1e-3, 1.0) / phi;
    h.alpha_p = log_u(u2, 1e-3, 1.0) / (phi * env.num_actions);
  } else {
    h.alpha_q = h.alpha_v = log_u(u1, 1e-6, 1e-3);
    h.alpha_p = log_u(u2, 1e-6, 1e-3);
  }
  return h;
}

}  // namespace rleval::rl
