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


#include "rleval/rl/environment.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rleval/error.hpp"

namespace rleval::rl {

SlipModel default_slip_model(const EnvironmentDescriptor& desc) {
  if (!desc.stochastic) return {};
  if (desc.family == EnvironmentFamily::kGridworld) return {0.8, 0.05, 0.0, 0.1};
  return {0.85, 0.0, 0.05, 0.1};
}

SlipModel perturb_slip_model(const SlipModel& base, Rng& rng) {
  if (base.intended == 1.0) return base;
  // Draw all four factors so the stream layout is the same for both families.
  SlipModel out = base;
  out.intended *= rng.log_uniform(0.8, 1.25);
  out.perpendicular *= rng.log_uniform(0.8, 1.25);
  out.opposite *= rng.log_uniform(0.8, 1.25);
  out.stay *= rng.log_uniform(0.8, 1.25);
  const double total = out.intended + 2.0 * out.perpendicular + out.opposite + out.stay;
  out.intended /= total;
  out.perpendicular /= total;
  out.opposite /= total;
  out.stay /= total;
  return out;
}

TabularMdp::TabularMdp(std::size_t num_states, int num_actions, std::size_t start,
                       std::size_t goal)
    : num_states_(num_states),
      num_actions_(num_actions),
      start_(start),
      goal_(goal),
      table_(num_states * static_cast<std::size_t>(num_actions)) {
  if (num_states == 0 || num_actions <= 0 || start >= num_states || goal >= num_states)
    throw InvalidArgument("malformed tabular MDP");
}

void TabularMdp::set_outcomes(std::size_t s, int a, std::vector<Outcome> outcomes) {
  std::vector<Outcome> merged;
  for (const Outcome& o : outcomes) {
    if (o.probability <= 0.0) continue;
    auto it = std::find_if(merged.begin(), merged.end(),
                           [&](const Outcome& m) { return m.next == o.next; });
    if (it == merged.end()) {
      merged.push_back(o);
    } else {
      it->probability += o.probability;
    }
  }
  table_[s * static_cast<std::size_t>(num_actions_) + static_cast<std::size_t>(a)] =
      std::move(merged);
}

std::span<const Outcome> TabularMdp::outcomes(std::size_t s, int a) const {
  return table_[s * static_cast<std::size_t>(num_actions_) + static_cast<std::size_t>(a)];
}

TabularMdp make_gridworld(int n, const SlipModel& slip) {
  if (n < 2) throw InvalidArgument("gridworld needs N >= 2");
  const auto N = static_cast<std::size_t>(n);
  TabularMdp mdp(N * N, 4, 0, N * N - 1);
  // up, down, left, right
  static constexpr int kDr[4] = {-1, 1, 0, 0};
  static constexpr int kDc[4] = {0, 0, -1, 1};
  static constexpr int kPerp[4][2] = {{2, 3}, {2, 3}, {0, 1}, {0, 1}};
  auto move = [n](std::size_t s, int dir) {
    const int r = static_cast<int>(s) / n + kDr[dir];
    const int c = static_cast<int>(s) % n + kDc[dir];
    if (r < 0 || r >= n || c < 0 || c >= n) return s;
    return static_cast<std::size_t>(r * n + c);
  };
  for (std::size_t s = 0; s < N * N; ++s)
    for (int a = 0; a < 4; ++a) {
      if (s == mdp.goal()) {
        mdp.set_outcomes(s, a, {{1.0, s}});
        continue;
      }
      mdp.set_outcomes(s, a,
                       {{slip.intended, move(s, a)},
                        {slip.perpendicular, move(s, kPerp[a][0])},
                        {slip.perpendicular, move(s, kPerp[a][1])},
                        {slip.opposite, s},
                        {slip.stay, s}});
    }
  return mdp;
}

TabularMdp make_chain(int n, const SlipModel& slip) {
  if (n < 2) throw InvalidArgument("chain needs N >= 2");
  const auto N = static_cast<std::size_t>(n);
  TabularMdp mdp(N, 2, 0, N - 1);
  auto move = [N](std::size_t s, int dir) -> std::size_t {
    if (dir == 0) return s == 0 ? 0 : s - 1;
    return s + 1 < N ? s + 1 : s;
  };
  for (std::size_t s = 0; s < N; ++s)
    for (int a = 0; a < 2; ++a) {
      if (s == mdp.goal()) {
        mdp.set_outcomes(s, a, {{1.0, s}});
        continue;
      }
      mdp.set_outcomes(s, a,
                       {{slip.intended, move(s, a)},
                        {slip.opposite, move(s, 1 - a)},
                        {slip.stay, s}});
    }
  return mdp;
}

TabularEnvironment::TabularEnvironment(TabularMdp mdp, int cutoff)
    : Environment(cutoff), mdp_(std::move(mdp)), state_(mdp_.start()) {}

void TabularEnvironment::reset(Rng&) {
  state_ = mdp_.start();
  steps_ = 0;
}

StepResult TabularEnvironment::step(int action, Rng& rng) {
  if (action < 0 || action >= mdp_.num_actions()) throw InvalidArgument("action out of range");
  const auto outcomes = mdp_.outcomes(state_, action);
  std::size_t next = outcomes.back().next;
  if (outcomes.size() > 1) {
    const double u = rng.uniform();
    double acc = 0.0;
    for (const Outcome& o : outcomes) {
      acc += o.probability;
      if (u < acc) {
        next = o.next;
        break;
      }
    }
  }
  state_ = next;
  ++steps_;
  StepResult r;
  r.reward = -1.0;
  r.terminal = state_ == mdp_.goal();
  r.truncated = !r.terminal && steps_ >= cutoff_;
  return r;
}

void TabularEnvironment::observe(std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  out[state_] = 1.0;
}

MountainCar::MountainCar(MountainCarParams params, int cutoff)
    : Environment(cutoff), params_(params) {}

void MountainCar::reset(Rng& rng) {
  position_ = rng.uniform(-0.6, -0.4);
  velocity_ = 0.0;
  steps_ = 0;
}

StepResult MountainCar::step(int action, Rng&) {
  if (action < 0 || action > 2) throw InvalidArgument("action out of range");
  velocity_ += static_cast<double>(action - 1) * params_.force -
               std::cos(3.0 * position_) * params_.gravity;
  velocity_ = std::clamp(velocity_, -kMaxSpeed, kMaxSpeed);
  position_ += velocity_;
  if (position_ <= kMinPosition) {
    position_ = kMinPosition;
    velocity_ = 0.0;
  }
  position_ = std::min(position_, kMaxPosition);
  ++steps_;
  StepResult r;
  r.reward = -1.0;
  r.terminal = position_ >= kMaxPosition;
  r.truncated = !r.terminal && steps_ >= cutoff_;
  return r;
}

void MountainCar::observe(std::span<double> out) const {
  out[0] = (position_ - kMinPosition) / (kMaxPosition - kMinPosition);
  out[1] = (velocity_ + kMaxSpeed) / (2.0 * kMaxSpeed);
}

TabularMdp make_tabular_mdp(const EnvironmentDescriptor& desc) {
  const SlipModel slip = default_slip_model(desc);
  switch (desc.family) {
    case EnvironmentFamily::kGridworld:
      return make_gridworld(desc.size, slip);
    case EnvironmentFamily::kChain:
      return make_chain(desc.size, slip);
    case EnvironmentFamily::kMountainCar:
      break;
  }
  throw InvalidArgument("mountain car has no tabular model");
}

std::unique_ptr<Environment> make_environment(const EnvironmentDescriptor& desc,
                                              std::uint64_t perturb_seed) {
  Rng rng(perturb_seed);
  switch (desc.family) {
    case EnvironmentFamily::kGridworld:
      if (desc.size != 5 && desc.size != 10)
        throw InvalidArgument("gridworld size must be 5 or 10, got " + std::to_string(desc.size));
      return std::make_unique<TabularEnvironment>(
          make_gridworld(desc.size, perturb_slip_model(default_slip_model(desc), rng)),
          desc.episode_cutoff());
    case EnvironmentFamily::kChain:
      if (desc.size != 10 && desc.size != 50)
        throw InvalidArgument("chain size must be 10 or 50, got " + std::to_string(desc.size));
      return std::make_unique<TabularEnvironment>(
          make_chain(desc.size, perturb_slip_model(default_slip_model(desc), rng)),
          desc.episode_cutoff());
    case EnvironmentFamily::kMountainCar: {
      if (desc.mountain_car_cutoff < 1) throw InvalidArgument("mountain car cutoff must be positive");
      MountainCarParams p;
      p.force *= rng.uniform(0.9, 1.1);
      p.gravity *= rng.uniform(0.9, 1.1);
      return std::make_unique<MountainCar>(p, desc.episode_cutoff());
    }
  }
  throw InvalidArgument("unknown environment family");
}

std::vector<double> value_iteration_oracle(const TabularMdp& mdp, double tolerance) {
  const std::size_t n = mdp.num_states();
  std::vector<double> v(n, 0.0);
  // Gauss-Seidel sweeps; from V = 0 the iterates decrease monotonically to
  // the optimal values whenever the goal is reachable from every state.
  for (int sweep = 0; sweep < 1000000; ++sweep) {
    double change = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
      if (s == mdp.goal()) continue;
      double best = -INFINITY;
      for (int a = 0; a < mdp.num_actions(); ++a) {
        double q = -1.0;
        for (const Outcome& o : mdp.outcomes(s, a)) q += o.probability * v[o.next];
        best = std::max(best, q);
      }
      change = std::max(change, std::abs(best - v[s]));
      v[s] = best;
    }
    if (change <= tolerance) return v;
  }
  throw ConvergenceError("value iteration did not converge", 0.0);
}

}  // namespace rleval::rl
