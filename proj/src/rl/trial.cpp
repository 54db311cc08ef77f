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


#include "rleval/rl/trial.hpp"

#include <memory>
#include <optional>
#include <vector>

#include "rleval/error.hpp"
#include "rleval/rl/agent.hpp"
#include "rleval/rl/environment.hpp"
#include "rleval/rl/fourier.hpp"
#include "rleval/rng.hpp"

namespace rleval::rl {

TrialResult run_trial_detailed(const AlgorithmDefinition& algorithm,
                               const EnvironmentDescriptor& desc, std::uint64_t seed,
                               int episodes) {
  if (episodes < 1) throw InvalidArgument("a trial needs at least one episode");
  Rng hp_rng(derive_seed(seed, "hyperparameters"));
  Rng env_rng(derive_seed(seed, "environment"));
  Rng agent_rng(derive_seed(seed, "agent"));
  std::unique_ptr<Environment> env = make_environment(desc, derive_seed(seed, "perturbation"));

  const EnvironmentMeta meta{env->discrete(), env->observation_size(), env->num_actions()};
  const HyperparameterDraw hp = sample_hyperparameters(algorithm, meta, hp_rng);

  std::optional<FourierBasis> basis;
  if (!env->discrete()) basis.emplace(env->observation_size(), hp.dorder, hp.iorder);
  Agent agent(algorithm.family, hp, hp.num_features, env->num_actions());

  std::vector<double> obs(env->observation_size());
  std::vector<double> phi(hp.num_features);
  auto features = [&]() {
    env->observe(obs);
    if (basis) {
      basis->evaluate(obs, phi);
    } else {
      phi = obs;
    }
  };

  double total = 0.0;
  for (int ep = 0; ep < episodes; ++ep) {
    env->reset(env_rng);
    features();
    int action = agent.begin_episode(phi, agent_rng);
    double ret = 0.0;
    for (;;) {
      const StepResult r = env->step(action, env_rng);
      ret += r.reward;
      features();
      action = agent.step(r.reward, phi, r.terminal, agent_rng);
      if (r.terminal || r.truncated) break;
    }
    total += ret;
  }
  return {total / episodes, agent.diverged(), hp};
}

double run_trial(const AlgorithmDefinition& algorithm, const EnvironmentDescriptor& env,
                 std::uint64_t seed, int episodes) {
  return run_trial_detailed(algorithm, env, seed, episodes).average_return;
}

}  // namespace rleval::rl
