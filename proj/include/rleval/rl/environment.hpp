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

// Built-in environments. Gridworlds and chains are small tabular MDPs with a
// reward of -1 per step until the goal; Mountain Car is the classic
// continuous-state task. Episodes end at the goal or at the step cutoff.

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "rleval/environment_descriptor.hpp"
#include "rleval/rng.hpp"

namespace rleval::rl {

struct StepResult {
  double reward = 0.0;
  bool terminal = false;   // reached the goal
  bool truncated = false;  // hit the step cutoff
};

// Slip probabilities of the stochastic tabular dynamics. Gridworld moves use
// all four (intended, each perpendicular, stay); chains have no perpendicular
// and use `opposite` instead.
struct SlipModel {
  double intended = 1.0;
  double perpendicular = 0.0;
  double opposite = 0.0;
  double stay = 0.0;
};

SlipModel default_slip_model(const EnvironmentDescriptor& desc);
// Multiplies every nonzero slip probability by e^{U(ln 0.8, ln 1.25)} and
// renormalizes. Deterministic models are returned unchanged.
SlipModel perturb_slip_model(const SlipModel& base, Rng& rng);

struct Outcome {
  double probability;
  std::size_t next;
};

// Finite MDP with a single start state and an absorbing goal.
class TabularMdp {
 public:
  TabularMdp(std::size_t num_states, int num_actions, std::size_t start, std::size_t goal);

  std::size_t num_states() const { return num_states_; }
  int num_actions() const { return num_actions_; }
  std::size_t start() const { return start_; }
  std::size_t goal() const { return goal_; }

  // Outcomes with equal destinations are merged; probabilities sum to 1.
  void set_outcomes(std::size_t s, int a, std::vector<Outcome> outcomes);
  std::span<const Outcome> outcomes(std::size_t s, int a) const;

 private:
  std::size_t num_states_;
  int num_actions_;
  std::size_t start_;
  std::size_t goal_;
  std::vector<std::vector<Outcome>> table_;
};

// Gridworld: N x N, state = row * N + col, start top-left, goal
// bottom-right, actions up/down/left/right. Moves off the map stay put.
TabularMdp make_gridworld(int n, const SlipModel& slip);
// Chain: N states in a row, start at 0, goal at N - 1, actions left/right.
TabularMdp make_chain(int n, const SlipModel& slip);

struct MountainCarParams {
  double force = 0.001;
  double gravity = 0.0025;
};

class Environment {
 public:
  virtual ~Environment() = default;

  virtual bool discrete() const = 0;
  virtual int num_actions() const = 0;
  // One-hot width for tabular environments, state dimension otherwise.
  virtual std::size_t observation_size() const = 0;
  virtual void reset(Rng& rng) = 0;
  virtual StepResult step(int action, Rng& rng) = 0;
  // Tabular state index; 0 for continuous environments.
  virtual std::size_t state_index() const = 0;
  // Features of the current state: one-hot for tabular environments, the
  // state normalized to [0, 1]^m otherwise.
  virtual void observe(std::span<double> out) const = 0;

  int cutoff() const { return cutoff_; }
  int steps() const { return steps_; }

 protected:
  explicit Environment(int cutoff) : cutoff_(cutoff) {}
  int cutoff_;
  int steps_ = 0;
};

class TabularEnvironment : public Environment {
 public:
  TabularEnvironment(TabularMdp mdp, int cutoff);

  bool discrete() const override { return true; }
  int num_actions() const override { return mdp_.num_actions(); }
  std::size_t observation_size() const override { return mdp_.num_states(); }
  void reset(Rng& rng) override;
  StepResult step(int action, Rng& rng) override;
  std::size_t state_index() const override { return state_; }
  void observe(std::span<double> out) const override;

  const TabularMdp& mdp() const { return mdp_; }

 private:
  TabularMdp mdp_;
  std::size_t state_ = 0;
};

class MountainCar : public Environment {
 public:
  static constexpr double kMinPosition = -1.2;
  static constexpr double kMaxPosition = 0.5;
  static constexpr double kMaxSpeed = 0.07;

  MountainCar(MountainCarParams params, int cutoff);

  bool discrete() const override { return false; }
  int num_actions() const override { return 3; }
  std::size_t observation_size() const override { return 2; }
  // Position ~ U(-0.6, -0.4), velocity 0.
  void reset(Rng& rng) override;
  StepResult step(int action, Rng& rng) override;
  std::size_t state_index() const override { return 0; }
  void observe(std::span<double> out) const override;

  double position() const { return position_; }
  double velocity() const { return velocity_; }
  const MountainCarParams& params() const { return params_; }

 private:
  MountainCarParams params_;
  double position_ = -0.5;
  double velocity_ = 0.0;
};

// Builds the environment for a descriptor. `perturb_seed` drives the per-trial
// dynamics perturbation (slip probabilities, or Mountain Car force and
// gravity scaled by U(0.9, 1.1)); deterministic tabular environments ignore
// it. Throws InvalidArgument for unsupported sizes.
std::unique_ptr<Environment> make_environment(const EnvironmentDescriptor& desc,
                                              std::uint64_t perturb_seed);
// Unperturbed tabular model of a discrete descriptor.
TabularMdp make_tabular_mdp(const EnvironmentDescriptor& desc);

// Optimal undiscounted state values of the cutoff-free MDP under reward -1
// per step (negated expected steps to the goal).
std::vector<double> value_iteration_oracle(const TabularMdp& mdp, double tolerance = 1e-12);

}  // namespace rleval::rl
