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


#include "rleval/rl/agent.hpp"

#include <algorithm>
#include <cmath>

#include "rleval/error.hpp"
#include "rleval/simd/kernels.hpp"

namespace rleval::rl {

Agent::Agent(AlgorithmFamily family, const HyperparameterDraw& hp, std::size_t num_features,
             int num_actions)
    : family_(family),
      hp_(hp),
      num_features_(num_features),
      num_actions_(num_actions),
      w_(num_features * static_cast<std::size_t>(num_actions), 0.0),
      e_(w_.size(), 0.0),
      phi_(num_features, 0.0),
      probs_(static_cast<std::size_t>(num_actions), 0.0) {
  if (num_features == 0 || num_actions < 1) throw InvalidArgument("agent needs features and actions");
  if (family == AlgorithmFamily::kActorCritic) {
    theta_.assign(num_features, 0.0);
    e_theta_.assign(num_features, 0.0);
  }
}

double Agent::action_value(std::span<const double> phi, int a) const {
  return simd::dot(w_.data() + static_cast<std::size_t>(a) * num_features_, phi.data(),
                   num_features_);
}

void Agent::policy(std::span<const double> phi, std::span<double> out) const {
  double top = -INFINITY;
  for (int a = 0; a < num_actions_; ++a) {
    out[static_cast<std::size_t>(a)] = action_value(phi, a);
    top = std::max(top, out[static_cast<std::size_t>(a)]);
  }
  double total = 0.0;
  for (double& p : out) {
    p = std::exp(p - top);
    total += p;
  }
  for (double& p : out) p /= total;
}

int Agent::greedy(std::span<const double> phi, Rng& rng, double* best_value) const {
  double best = -INFINITY;
  int count = 0;
  int choice = 0;
  // Uniform among maximizers via reservoir sampling.
  for (int a = 0; a < num_actions_; ++a) {
    const double q = action_value(phi, a);
    if (q > best) {
      best = q;
      count = 1;
      choice = a;
    } else if (q == best) {
      ++count;
      if (rng.below(static_cast<std::uint64_t>(count)) == 0) choice = a;
    }
  }
  if (best_value != nullptr) *best_value = best;
  return choice;
}

int Agent::select(std::span<const double> phi, Rng& rng) {
  if (diverged_) return static_cast<int>(rng.below(static_cast<std::uint64_t>(num_actions_)));
  if (family_ == AlgorithmFamily::kActorCritic) {
    policy(phi, probs_);
    const double u = rng.uniform();
    double acc = 0.0;
    for (int a = 0; a < num_actions_; ++a) {
      acc += probs_[static_cast<std::size_t>(a)];
      if (u < acc) return a;
    }
    return num_actions_ - 1;
  }
  if (rng.uniform() < hp_.epsilon)
    return static_cast<int>(rng.below(static_cast<std::uint64_t>(num_actions_)));
  return greedy(phi, rng, nullptr);
}

int Agent::begin_episode(std::span<const double> phi, Rng& rng) {
  if (phi.size() != num_features_) throw InvalidArgument("feature vector size mismatch");
  std::fill(e_.begin(), e_.end(), 0.0);
  std::fill(e_theta_.begin(), e_theta_.end(), 0.0);
  std::copy(phi.begin(), phi.end(), phi_.begin());
  action_ = select(phi_, rng);
  return action_;
}

void Agent::check_finite() {
  if (!simd::all_finite(w_.data(), w_.size()) || !simd::all_finite(theta_.data(), theta_.size()))
    diverged_ = true;
}

int Agent::step(double reward, std::span<const double> phi_next, bool terminal, Rng& rng) {
  if (phi_next.size() != num_features_) throw InvalidArgument("feature vector size mismatch");
  if (diverged_) {
    std::copy(phi_next.begin(), phi_next.end(), phi_.begin());
    action_ = select(phi_, rng);
    return action_;
  }
  const double gl = hp_.gamma * hp_.lambda;
  const std::size_t n = num_features_;
  double* e_a = e_.data() + static_cast<std::size_t>(action_) * n;

  int next = 0;
  switch (family_) {
    case AlgorithmFamily::kSarsaLambda: {
      const double q = action_value(phi_, action_);
      double target = reward;
      if (!terminal) {
        next = select(phi_next, rng);
        target += hp_.gamma * action_value(phi_next, next);
      }
      const double delta = target - q;
      simd::axpy(1.0, phi_.data(), e_a, n);
      simd::axpy(hp_.alpha_q * delta, e_.data(), w_.data(), w_.size());
      simd::scale(gl, e_.data(), e_.size());
      break;
    }
    case AlgorithmFamily::kQLambda: {
      const double q = action_value(phi_, action_);
      double target = reward;
      bool next_greedy = true;
      if (!terminal) {
        next = select(phi_next, rng);
        double best = 0.0;
        greedy(phi_next, rng, &best);
        target += hp_.gamma * best;
        next_greedy = action_value(phi_next, next) == best;
      }
      const double delta = target - q;
      simd::axpy(1.0, phi_.data(), e_a, n);
      simd::axpy(hp_.alpha_q * delta, e_.data(), w_.data(), w_.size());
      // Watkins: an exploratory action cuts every trace.
      if (next_greedy) {
        simd::scale(gl, e_.data(), e_.size());
      } else {
        std::fill(e_.begin(), e_.end(), 0.0);
      }
      break;
    }
    case AlgorithmFamily::kActorCritic: {
      const double v = simd::dot(theta_.data(), phi_.data(), n);
      const double v_next = terminal ? 0.0 : simd::dot(theta_.data(), phi_next.data(), n);
      const double delta = reward + hp_.gamma * v_next - v;
      simd::axpy(1.0, phi_.data(), e_theta_.data(), n);
      // grad log pi(a|s) for block b is (1{b = a} - pi(b|s)) phi(s).
      policy(phi_, probs_);
      for (int b = 0; b < num_actions_; ++b) {
        const double coef = (b == action_ ? 1.0 : 0.0) - probs_[static_cast<std::size_t>(b)];
        simd::axpy(coef, phi_.data(), e_.data() + static_cast<std::size_t>(b) * n, n);
      }
      simd::axpy(hp_.alpha_v * delta, e_theta_.data(), theta_.data(), n);
      simd::axpy(hp_.alpha_p * delta, e_.data(), w_.data(), w_.size());
      simd::scale(gl, e_theta_.data(), n);
      simd::scale(gl, e_.data(), e_.size());
      break;
    }
  }
  check_finite();
  std::copy(phi_next.begin(), phi_next.end(), phi_.begin());
  if (family_ == AlgorithmFamily::kActorCritic || diverged_) {
    if (!terminal) next = select(phi_, rng);
  }
  action_ = next;
  return action_;
}

}  // namespace rleval::rl
