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


#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include "rleval/environment_descriptor.hpp"
#include "rleval/error.hpp"
#include "rleval/perf_data.hpp"
#include "rleval/rl/agent.hpp"
#include "rleval/rl/environment.hpp"
#include "rleval/rl/fourier.hpp"
#include "rleval/rl/hyperparameters.hpp"
#include "rleval/rl/trial.hpp"
#include "rleval/rng.hpp"

namespace rleval::rl {
namespace {

EnvironmentDescriptor desc(const char* name) { return *parse_environment_name(name); }

double sum_outcomes(const TabularMdp& mdp, std::size_t s, int a) {
  double p = 0.0;
  for (const Outcome& o : mdp.outcomes(s, a)) p += o.probability;
  return p;
}

// ---- environments ---------------------------------------------------------

TEST(Environment, Gridworld5Layout) {
  auto env = make_environment(desc("gridworld5d"), 1);
  EXPECT_TRUE(env->discrete());
  EXPECT_EQ(env->num_actions(), 4);
  EXPECT_EQ(env->observation_size(), 25u);
  EXPECT_EQ(env->cutoff(), 500);
  Rng rng(1);
  env->reset(rng);
  EXPECT_EQ(env->state_index(), 0u);
  const auto mdp = make_tabular_mdp(desc("gridworld5d"));
  EXPECT_EQ(mdp.start(), 0u);
  EXPECT_EQ(mdp.goal(), 24u);
}

TEST(Environment, ChainAlwaysRight) {
  auto env = make_environment(desc("chain10d"), 1);
  Rng rng(2);
  env->reset(rng);
  double ret = 0.0;
  for (;;) {
    const StepResult r = env->step(1, rng);
    ret += r.reward;
    if (r.terminal || r.truncated) {
      EXPECT_TRUE(r.terminal);
      break;
    }
  }
  EXPECT_EQ(ret, -9.0);
}

TEST(Environment, CutoffIsExact) {
  auto env = make_environment(desc("chain10d"), 1);
  Rng rng(3);
  env->reset(rng);
  int steps = 0;
  for (;;) {
    ++steps;
    const StepResult r = env->step(0, rng);  // always left, never reaches the goal
    if (r.truncated) break;
    ASSERT_FALSE(r.terminal);
  }
  EXPECT_EQ(steps, 200);
}

TEST(Environment, StochasticReplay) {
  auto run = [] {
    auto env = make_environment(desc("gridworld5s"), 99);
    Rng rng(1234);
    env->reset(rng);
    std::vector<std::size_t> path;
    for (int t = 0; t < 200; ++t) {
      const StepResult r = env->step(t % 4, rng);
      path.push_back(env->state_index());
      if (r.terminal || r.truncated) break;
    }
    return path;
  };
  EXPECT_EQ(run(), run());
}

TEST(Environment, SlipModels) {
  for (const auto& name : builtin_environment_names()) {
    const auto d = desc(name.c_str());
    if (!d.discrete()) continue;
    const auto mdp = make_tabular_mdp(d);
    for (std::size_t s = 0; s < mdp.num_states(); ++s)
      for (int a = 0; a < mdp.num_actions(); ++a) EXPECT_NEAR(sum_outcomes(mdp, s, a), 1.0, 1e-12);
  }
  const SlipModel g = default_slip_model(desc("gridworld5s"));
  EXPECT_EQ(g.intended, 0.8);
  EXPECT_EQ(g.perpendicular, 0.05);
  EXPECT_EQ(g.stay, 0.1);
  const SlipModel c = default_slip_model(desc("chain10s"));
  EXPECT_EQ(c.intended, 0.85);
  EXPECT_EQ(c.opposite, 0.05);
  EXPECT_EQ(c.stay, 0.1);
  const SlipModel det = default_slip_model(desc("chain10d"));
  EXPECT_EQ(det.intended, 1.0);
}

TEST(Environment, Perturbation) {
  const SlipModel base = default_slip_model(desc("gridworld5s"));
  Rng rng(derive_seed(5, "perturb"));
  for (int rep = 0; rep < 200; ++rep) {
    const SlipModel p = perturb_slip_model(base, rng);
    EXPECT_NEAR(p.intended + 2 * p.perpendicular + p.opposite + p.stay, 1.0, 1e-12);
    // Each factor lies in [0.8, 1.25]; renormalization can shift the ratio
    // of any two by at most 1.25 / 0.8.
    const double ratio = (p.intended / p.stay) / (base.intended / base.stay);
    EXPECT_GE(ratio, 0.8 / 1.25 - 1e-12);
    EXPECT_LE(ratio, 1.25 / 0.8 + 1e-12);
  }
  const SlipModel det = default_slip_model(desc("chain10d"));
  const SlipModel same = perturb_slip_model(det, rng);
  EXPECT_EQ(same.intended, 1.0);
}

TEST(Environment, InvalidSizes) {
  EnvironmentDescriptor g = desc("gridworld5d");
  g.size = 7;
  EXPECT_THROW(make_environment(g, 1), InvalidArgument);
  EnvironmentDescriptor c = desc("chain10d");
  c.size = 20;
  EXPECT_THROW(make_environment(c, 1), InvalidArgument);
}

TEST(ValueIteration, Oracles) {
  auto start_value = [](const char* name) {
    const auto mdp = make_tabular_mdp(desc(name));
    return value_iteration_oracle(mdp)[mdp.start()];
  };
  EXPECT_NEAR(start_value("gridworld5d"), -8.0, 1e-9);
  EXPECT_NEAR(start_value("chain10d"), -9.0, 1e-9);
  EXPECT_NEAR(start_value("chain50d"), -49.0, 1e-9);
  EXPECT_NEAR(start_value("gridworld10d"), -18.0, 1e-9);
  // Slips only slow the agent down.
  EXPECT_LT(start_value("gridworld5s"), -8.0);
  EXPECT_LT(start_value("chain10s"), -9.0);
}

TEST(MountainCar, ObservationAndReset) {
  auto env = make_environment(desc("mountaincar"), 7);
  EXPECT_FALSE(env->discrete());
  EXPECT_EQ(env->num_actions(), 3);
  EXPECT_EQ(env->cutoff(), 5000);
  Rng rng(8);
  std::vector<double> obs(2);
  for (int rep = 0; rep < 50; ++rep) {
    env->reset(rng);
    const auto* mc = dynamic_cast<const MountainCar*>(env.get());
    ASSERT_NE(mc, nullptr);
    EXPECT_GE(mc->position(), -0.6);
    EXPECT_LE(mc->position(), -0.4);
    EXPECT_EQ(mc->velocity(), 0.0);
    for (int t = 0; t < 300; ++t) {
      env->step(static_cast<int>(rng.below(3)), rng);
      env->observe(obs);
      EXPECT_GE(obs[0], 0.0);
      EXPECT_LE(obs[0], 1.0);
      EXPECT_GE(obs[1], 0.0);
      EXPECT_LE(obs[1], 1.0);
    }
  }
}

// Pushing along the velocity pumps energy and reaches the goal well before
// the cutoff.
TEST(MountainCar, EnergyPumpingSolves) {
  auto env = make_environment(desc("mountaincar"), 11);
  Rng rng(12);
  env->reset(rng);
  const auto* mc = dynamic_cast<const MountainCar*>(env.get());
  int steps = 0;
  for (;;) {
    const StepResult r = env->step(mc->velocity() >= 0.0 ? 2 : 0, rng);
    ++steps;
    if (r.terminal || r.truncated) {
      EXPECT_TRUE(r.terminal);
      break;
    }
  }
  EXPECT_LT(steps, 1000);
}

TEST(MountainCar, PerturbedParameters) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto env = make_environment(desc("mountaincar"), seed);
    const auto& p = dynamic_cast<const MountainCar&>(*env).params();
    EXPECT_GE(p.force, 0.001 * 0.9);
    EXPECT_LE(p.force, 0.001 * 1.1);
    EXPECT_GE(p.gravity, 0.0025 * 0.9);
    EXPECT_LE(p.gravity, 0.0025 * 1.1);
  }
}

// ---- Fourier basis --------------------------------------------------------

TEST(Fourier, SmallestBasis) {
  const FourierBasis b(1, 0, 1);
  ASSERT_EQ(b.size(), 2u);
  const auto at0 = b.evaluate(std::vector<double>{0.0});
  EXPECT_EQ(at0, (std::vector<double>{1.0, 1.0}));
  const auto at = b.evaluate(std::vector<double>{0.3});
  EXPECT_EQ(at[0], 1.0);
  EXPECT_NEAR(at[1], std::cos(3.14159265358979323846 * 0.3), 1e-15);
}

TEST(Fourier, CoupledCount) {
  const FourierBasis b(2, 1, 1);
  EXPECT_EQ(b.size(), 4u);  // {0,1}^2 already holds the axis vectors
  EXPECT_EQ(fourier_feature_count(2, 9, 1), 100u);
  EXPECT_EQ(fourier_feature_count(2, 9, 9), 100u);
  EXPECT_EQ(fourier_feature_count(2, 3, 9), 16u + 2u * 6u);
  EXPECT_EQ(truncate_dorder(2, 9), 9);
  EXPECT_EQ(truncate_dorder(4, 9), 9);
  EXPECT_EQ(truncate_dorder(5, 9), 5);  // 6^5 = 7776 <= 10000 < 7^5
}

TEST(Fourier, ConstantFirstAndNoDuplicates) {
  const FourierBasis b(2, 2, 5);
  for (int c : b.coefficient(0)) EXPECT_EQ(c, 0);
  for (std::size_t f = 0; f < b.size(); ++f)
    for (std::size_t g = f + 1; g < b.size(); ++g) {
      const auto x = b.coefficient(f), y = b.coefficient(g);
      EXPECT_FALSE(std::equal(x.begin(), x.end(), y.begin()));
    }
  EXPECT_EQ(b.size(), 9u + 2u * 3u);
}

TEST(Fourier, RangeAndDomain) {
  const FourierBasis b(2, 3, 7);
  Rng rng(13);
  for (int rep = 0; rep < 100; ++rep) {
    const std::vector<double> s{rng.uniform(), rng.uniform()};
    for (double f : b.evaluate(s)) {
      EXPECT_GE(f, -1.0);
      EXPECT_LE(f, 1.0);
    }
  }
  EXPECT_THROW(b.evaluate(std::vector<double>{1.2, 0.5}), InvalidArgument);
  EXPECT_THROW(FourierBasis(5, 9, 1), InvalidArgument);
}

// ---- hyperparameters ------------------------------------------------------

// Two-sided KS statistic of samples against a continuous CDF.
double ks_statistic(std::vector<double> x, const std::function<double(double)>& cdf) {
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return d;
}

// Critical value at alpha = 0.001, asymptotic form.
double ks_critical(std::size_t n) {
  return std::sqrt(-0.5 * std::log(0.001 / 2.0)) / std::sqrt(static_cast<double>(n));
}

std::function<double(double)> uniform_cdf(double lo, double hi) {
  return [=](double x) { return std::clamp((x - lo) / (hi - lo), 0.0, 1.0); };
}
std::function<double(double)> log_uniform_cdf(double lo, double hi) {
  return [=](double x) {
    return std::clamp((std::log(x) - std::log(lo)) / (std::log(hi) - std::log(lo)), 0.0, 1.0);
  };
}

TEST(Hyperparameters, Marginals) {
  const std::size_t n = 10000;
  const EnvironmentMeta discrete{true, 25, 4};
  const EnvironmentMeta continuous{false, 2, 3};
  Rng rng(derive_seed(14, "ks"));
  std::vector<double> lambda, one_minus_gamma, eps, aq_d, ap_d, aq_c, ap_c, aq_s, ap_s;
  std::vector<int> dorder(10, 0), iorder(10, 0);
  const AlgorithmDefinition ac{AlgorithmFamily::kActorCritic, false};
  const AlgorithmDefinition acs{AlgorithmFamily::kActorCritic, true};
  for (std::size_t t = 0; t < n; ++t) {
    const auto h = sample_hyperparameters(ac, discrete, rng);
    lambda.push_back(h.lambda);
    one_minus_gamma.push_back(1.0 - h.gamma);
    eps.push_back(h.epsilon);
    aq_d.push_back(h.alpha_q);
    ap_d.push_back(h.alpha_p);
    EXPECT_EQ(h.alpha_q, h.alpha_v);
    EXPECT_GT(h.gamma, 0.95);
    EXPECT_LT(h.gamma, 0.9999);
    const auto c = sample_hyperparameters(ac, continuous, rng);
    aq_c.push_back(c.alpha_q);
    ap_c.push_back(c.alpha_p);
    ++dorder[static_cast<std::size_t>(c.dorder)];
    ++iorder[static_cast<std::size_t>(c.iorder)];
    EXPECT_LE(c.num_features, kMaxFourierFeatures);
    const auto s = sample_hyperparameters(acs, continuous, rng);
    aq_s.push_back(s.alpha_q * static_cast<double>(s.num_features));
    ap_s.push_back(s.alpha_p * static_cast<double>(s.num_features) * 3.0);
  }
  const double crit = ks_critical(n);
  EXPECT_LT(ks_statistic(lambda, uniform_cdf(0, 1)), crit);
  EXPECT_LT(ks_statistic(eps, uniform_cdf(0, 1)), crit);
  EXPECT_LT(ks_statistic(one_minus_gamma, log_uniform_cdf(1e-4, 0.05)), crit);
  EXPECT_LT(ks_statistic(aq_d, log_uniform_cdf(1e-3, 1e-1)), crit);
  EXPECT_LT(ks_statistic(ap_d, log_uniform_cdf(1e-3, 1e-1)), crit);
  EXPECT_LT(ks_statistic(aq_c, log_uniform_cdf(1e-6, 1e-3)), crit);
  EXPECT_LT(ks_statistic(ap_c, log_uniform_cdf(1e-6, 1e-3)), crit);
  EXPECT_LT(ks_statistic(aq_s, log_uniform_cdf(1e-3, 1.0)), crit);
  EXPECT_LT(ks_statistic(ap_s, log_uniform_cdf(1e-3, 1.0)), crit);
  // Discrete orders: every cell within 5 sigma of n / 10 or n / 9.
  EXPECT_EQ(iorder[0], 0);
  for (int k = 0; k < 10; ++k) {
    const double p = 0.1, sd = std::sqrt(n * p * (1 - p));
    EXPECT_NEAR(dorder[static_cast<std::size_t>(k)], n * p, 5 * sd);
    if (k > 0) {
      const double q = 1.0 / 9.0, sq = std::sqrt(n * q * (1 - q));
      EXPECT_NEAR(iorder[static_cast<std::size_t>(k)], n * q, 5 * sq);
    }
  }
}

TEST(Hyperparameters, Names) {
  for (const auto& name : builtin_algorithm_names()) {
    const auto def = parse_algorithm_name(name);
    ASSERT_TRUE(def.has_value()) << name;
    EXPECT_EQ(def->name(), name);
  }
  EXPECT_FALSE(parse_algorithm_name("ppo").has_value());
  EXPECT_EQ(builtin_algorithm_names().size(), 6u);
}

// ---- agents ---------------------------------------------------------------

std::vector<double> one_hot(std::size_t n, std::size_t k) {
  std::vector<double> v(n, 0.0);
  v[k] = 1.0;
  return v;
}

TEST(Agent, OneStepSarsaUpdate) {
  HyperparameterDraw hp;
  hp.lambda = 0.0;
  hp.gamma = 0.9;
  hp.epsilon = 0.0;
  hp.alpha_q = 0.5;
  Agent agent(AlgorithmFamily::kSarsaLambda, hp, 4, 2);
  Rng rng(15);
  const int a = agent.begin_episode(one_hot(4, 1), rng);
  agent.step(-1.0, one_hot(4, 2), false, rng);
  const auto w = agent.weights();
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k == static_cast<std::size_t>(a) * 4 + 1) {
      EXPECT_EQ(w[k], -0.5);  // alpha * (r + gamma * 0 - 0)
    } else {
      EXPECT_EQ(w[k], 0.0);
    }
  }
}

TEST(Agent, ZeroStepSizeLeavesWeights) {
  for (auto fam : {AlgorithmFamily::kSarsaLambda, AlgorithmFamily::kQLambda,
                   AlgorithmFamily::kActorCritic}) {
    HyperparameterDraw hp;
    hp.lambda = 0.7;
    hp.gamma = 0.99;
    hp.epsilon = 0.3;
    Agent agent(fam, hp, 5, 3);
    Rng rng(16);
    agent.begin_episode(one_hot(5, 0), rng);
    for (int t = 0; t < 50; ++t) agent.step(-1.0, one_hot(5, static_cast<std::size_t>(t % 5)), t == 49, rng);
    for (double x : agent.weights()) EXPECT_EQ(x, 0.0);
    for (double x : agent.critic_weights()) EXPECT_EQ(x, 0.0);
  }
}

TEST(Agent, DivergenceIsSticky) {
  HyperparameterDraw hp;
  hp.lambda = 0.9;
  hp.gamma = 0.99;
  hp.epsilon = 0.1;
  hp.alpha_q = 1e300;
  Agent agent(AlgorithmFamily::kSarsaLambda, hp, 3, 2);
  Rng rng(17);
  const std::vector<double> phi{1e10, 1e10, 1e10};
  agent.begin_episode(phi, rng);
  for (int t = 0; t < 10 && !agent.diverged(); ++t) agent.step(-1e300, phi, false, rng);
  ASSERT_TRUE(agent.diverged());
  const std::vector<double> frozen(agent.weights().begin(), agent.weights().end());
  for (int t = 0; t < 20; ++t) {
    const int a = agent.step(-1.0, phi, false, rng);
    EXPECT_GE(a, 0);
    EXPECT_LT(a, 2);
  }
  const std::vector<double> after(agent.weights().begin(), agent.weights().end());
  // NaN != NaN, so compare bit patterns through memcmp-like equality.
  ASSERT_EQ(frozen.size(), after.size());
  for (std::size_t k = 0; k < frozen.size(); ++k)
    EXPECT_TRUE(frozen[k] == after[k] || (std::isnan(frozen[k]) && std::isnan(after[k])));
}

TEST(Agent, PolicyIsDistribution) {
  HyperparameterDraw hp;
  hp.gamma = 0.99;
  hp.alpha_v = 0.1;
  hp.alpha_p = 0.1;
  Agent agent(AlgorithmFamily::kActorCritic, hp, 4, 3);
  Rng rng(18);
  agent.begin_episode(one_hot(4, 0), rng);
  for (int t = 0; t < 30; ++t) agent.step(-1.0, one_hot(4, static_cast<std::size_t>(t % 4)), false, rng);
  std::vector<double> p(3);
  agent.policy(one_hot(4, 2), p);
  EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0), 1.0, 1e-12);
  for (double x : p) EXPECT_GT(x, 0.0);
}

// Train a tabular agent on chain10d and check the greedy action is optimal
// (right) in every non-goal state.
bool solves_chain(AlgorithmFamily fam, const HyperparameterDraw& hp, std::uint64_t seed) {
  auto env = make_environment(desc("chain10d"), seed);
  Agent agent(fam, hp, env->observation_size(), env->num_actions());
  Rng rng(seed);
  std::vector<double> phi(env->observation_size());
  for (int ep = 0; ep < 100; ++ep) {
    env->reset(rng);
    env->observe(phi);
    int action = agent.begin_episode(phi, rng);
    for (;;) {
      const StepResult r = env->step(action, rng);
      env->observe(phi);
      action = agent.step(r.reward, phi, r.terminal, rng);
      if (r.terminal || r.truncated) break;
    }
  }
  for (std::size_t s = 0; s + 1 < 10; ++s) {
    const auto x = one_hot(10, s);
    if (!(agent.action_value(x, 1) > agent.action_value(x, 0))) return false;
  }
  return true;
}

TEST(Agent, TabularQSolvesChain) {
  HyperparameterDraw hp;
  hp.lambda = 0.0;
  hp.gamma = 0.99;
  hp.epsilon = 0.1;
  hp.alpha_q = 0.1;
  EXPECT_TRUE(solves_chain(AlgorithmFamily::kQLambda, hp, 19));
}

TEST(Agent, TabularAgentsSolveChainMostSeeds) {
  HyperparameterDraw hp;
  hp.lambda = 0.5;
  hp.gamma = 0.99;
  hp.epsilon = 0.1;
  hp.alpha_q = 0.1;
  for (auto fam : {AlgorithmFamily::kSarsaLambda, AlgorithmFamily::kQLambda}) {
    int ok = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) ok += solves_chain(fam, hp, seed) ? 1 : 0;
    EXPECT_GE(ok, 95);
  }
}

// ---- trials ---------------------------------------------------------------

TEST(Trial, DeterministicAndBounded) {
  for (const auto& alg : builtin_algorithm_names()) {
    const auto def = *parse_algorithm_name(alg);
    for (const char* env : {"gridworld5s", "chain10d", "chain10s"}) {
      const auto d = desc(env);
      const ReturnBounds b = env_return_bounds(d);
      for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const double x = run_trial(def, d, seed, 20);
        EXPECT_EQ(x, run_trial(def, d, seed, 20));
        EXPECT_TRUE(std::isfinite(x));
        EXPECT_GE(x, b.min);
        EXPECT_LE(x, b.max);
      }
    }
  }
}

TEST(Trial, MountainCarBounded) {
  EnvironmentDescriptor d = desc("mountaincar");
  d.mountain_car_cutoff = 300;
  const ReturnBounds b = env_return_bounds(d);
  for (const auto& alg : builtin_algorithm_names()) {
    const auto def = *parse_algorithm_name(alg);
    const auto r = run_trial_detailed(def, d, 5, 3);
    EXPECT_TRUE(std::isfinite(r.average_return));
    EXPECT_GE(r.average_return, b.min);
    EXPECT_LE(r.average_return, b.max);
    EXPECT_GT(r.hyperparameters.num_features, 0u);
  }
}

}  // namespace
}  // namespace rleval::rl
