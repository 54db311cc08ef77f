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

// Linear agents with accumulating eligibility traces: Sarsa(lambda),
// Watkins' Q(lambda) and a softmax actor-critic. Tabular environments use
// one-hot features, so the same code covers the tabular case.

#include <cstddef>
#include <span>
#include <vector>

#include "rleval/rl/hyperparameters.hpp"
#include "rleval/rng.hpp"

namespace rleval::rl {

class Agent {
 public:
  Agent(AlgorithmFamily family, const HyperparameterDraw& hp, std::size_t num_features,
        int num_actions);

  // Clears the traces and returns the first action.
  int begin_episode(std::span<const double> phi, Rng& rng);
  // Learns from (phi, a, reward, phi_next) and returns the next action. When
  // `terminal` is set the next state's value is taken as zero and the
  // returned action is meaningless.
  int step(double reward, std::span<const double> phi_next, bool terminal, Rng& rng);

  // Sticky: once any parameter turns non-finite, learning stops and actions
  // are drawn uniformly at random.
  bool diverged() const { return diverged_; }

  AlgorithmFamily family() const { return family_; }
  const HyperparameterDraw& hyperparameters() const { return hp_; }
  std::size_t num_features() const { return num_features_; }
  int num_actions() const { return num_actions_; }

  // Action values (Sarsa, Q) or actor preferences (AC), action-major blocks
  // of num_features weights.
  std::span<const double> weights() const { return w_; }
  std::span<double> weights() { return w_; }
  // Critic weights (AC only).
  std::span<const double> critic_weights() const { return theta_; }

  double action_value(std::span<const double> phi, int a) const;
  // Softmax policy of the actor (AC only).
  void policy(std::span<const double> phi, std::span<double> out) const;

 private:
  int select(std::span<const double> phi, Rng& rng);
  int greedy(std::span<const double> phi, Rng& rng, double* best_value) const;
  void check_finite();

  AlgorithmFamily family_;
  HyperparameterDraw hp_;
  std::size_t num_features_;
  int num_actions_;
  std::vector<double> w_;
  std::vector<double> e_;
  std::vector<double> theta_;
  std::vector<double> e_theta_;
  std::vector<double> phi_;
  std::vector<double> probs_;
  int action_ = 0;
  bool diverged_ = false;
};

}  // namespace rleval::rl
