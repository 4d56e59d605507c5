#ifndef ALB_POLICIES_ALB_NORM_HPP
#define ALB_POLICIES_ALB_NORM_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "alb/confidence.hpp"
#include "alb/policies/oful_plus.hpp"
#include "alb/policies/schedule.hpp"
#include "alb/policies/ucb1.hpp"
#include "alb/rng.hpp"
#include "alb/trace.hpp"

namespace alb {

struct AlbNormOptions {
  long tau = 0;                     // initial exploration half-length
  long long first_epoch_len = 100;  // T_1
  double delta1 = 0.1;
  double delta_s = 0.1;
  std::optional<double> b1_override;  // skip the 2*tau estimation phase when set
};

namespace detail {

// The 2*tau single-arm estimation phase. The arm choice and sample rounds are
// shared by every policy that performs the estimate, so paired runs see the
// same b1.
template <class Env>
double estimate_b1(const Env& env, long tau, double sigma, double delta_s,
                   std::uint64_t trial_seed, long& t, long horizon,
                   RegretTrace& trace) {
  CounterRng pick(derive_key(trial_seed, {static_cast<std::uint64_t>(Stream::policy), 0}));
  long arm = static_cast<long>(pick.next_index(static_cast<std::uint64_t>(env.K())));
  std::vector<double> rewards;
  std::vector<Eigen::VectorXd> arm_contexts;
  for (long j = 0; j < 2 * tau && t < horizon; ++j) {
    ++t;
    auto ctx = env.contexts(t);
    auto obs = env.observe(t, arm, ctx);
    trace.record(obs.instant_regret);
    rewards.push_back(obs.reward);
    arm_contexts.push_back(ctx[arm]);
  }
  if (rewards.size() < 2 || rewards.size() % 2 != 0) return 1.0;  // horizon exhausted
  return initial_norm_estimate(rewards, arm_contexts, sigma, delta_s).b1;
}

// One pull of each arm in order; the rewards seed every later epoch restart.
template <class Env>
void seed_arms(const Env& env, long& t, long horizon, RegretTrace& trace,
               std::vector<Eigen::VectorXd>& seed_contexts,
               std::vector<double>& seed_rewards) {
  seed_contexts.assign(env.K(), Eigen::VectorXd());
  seed_rewards.assign(env.K(), 0.0);
  for (long i = 0; i < env.K() && t < horizon; ++i) {
    ++t;
    auto ctx = env.contexts(t);
    auto obs = env.observe(t, i, ctx);
    trace.record(obs.instant_regret);
    seed_contexts[i] = ctx[i];
    seed_rewards[i] = obs.reward;
  }
}

template <class Env>
RadiusParams radius_params(const Env& env, double b, double delta, long long horizon) {
  RadiusParams p;
  p.b = b;
  p.delta = delta;
  p.sigma = env.sigma();
  p.rho_min = env.rho_min();
  p.d = env.d();
  p.K = env.K();
  p.horizon = std::max<long long>(horizon, 1);
  return p;
}

}  // namespace detail

// Adaptive Linear Bandit, norm mode: initial b1 from paired differencing
// (unless overridden), K seed pulls, then doubling epochs of OFUL+ restarts
// with the norm bound refined from the confidence ball at each epoch end.
template <class Env>
RegretTrace alb_norm_run(const Env& env, const AlbNormOptions& opt, long horizon,
                         std::uint64_t trial_seed) {
  RegretTrace trace;
  trace.seed = trial_seed;
  long t = 0;
  double b = opt.b1_override
                 ? *opt.b1_override
                 : detail::estimate_b1(env, opt.tau, env.sigma(), opt.delta_s,
                                       trial_seed, t, horizon, trace);
  std::vector<Eigen::VectorXd> seed_contexts;
  std::vector<double> seed_rewards;
  detail::seed_arms(env, t, horizon, trace, seed_contexts, seed_rewards);
  if (t >= horizon) return trace;

  for (long epoch = 1; t < horizon; ++epoch) {
    EpochSchedule sched = norm_epoch(epoch, opt.first_epoch_len, opt.delta1);
    RadiusParams params = detail::radius_params(env, b, sched.slack, sched.length);
    OfulPlusState state = oful_plus_init(params, seed_contexts, seed_rewards);
    trace.snapshots.push_back({epoch, SnapshotKind::norm_bound, b, {}});
    for (long long step = 0; step < sched.length && t < horizon; ++step) {
      ++t;
      auto ctx = env.contexts(t);
      long arm = oful_plus_select(state, ctx);
      auto obs = env.observe(t, arm, ctx);
      trace.record(obs.instant_regret);
      oful_plus_observe(state, ctx, arm, obs.reward);
    }
    b = norm_refine(state.ball);
  }
  return trace;
}

// Non-adaptive comparator: one OFUL+ run over the whole horizon with a fixed
// norm bound. Without an override it performs the same estimation phase as
// ALB-Norm (paired rounds) and then never refines.
template <class Env>
RegretTrace oful_plus_fixed_run(const Env& env, std::optional<double> b_input,
                                long tau, double delta, double delta_s, long horizon,
                                std::uint64_t trial_seed) {
  RegretTrace trace;
  trace.seed = trial_seed;
  long t = 0;
  double b = b_input ? *b_input
                     : detail::estimate_b1(env, tau, env.sigma(), delta_s, trial_seed,
                                           t, horizon, trace);
  std::vector<Eigen::VectorXd> seed_contexts;
  std::vector<double> seed_rewards;
  detail::seed_arms(env, t, horizon, trace, seed_contexts, seed_rewards);
  if (t >= horizon) return trace;

  RadiusParams params = detail::radius_params(env, b, delta, horizon - t);
  OfulPlusState state = oful_plus_init(params, seed_contexts, seed_rewards);
  trace.snapshots.push_back({1, SnapshotKind::norm_bound, b, {}});
  while (t < horizon) {
    ++t;
    auto ctx = env.contexts(t);
    long arm = oful_plus_select(state, ctx);
    auto obs = env.observe(t, arm, ctx);
    trace.record(obs.instant_regret);
    oful_plus_observe(state, ctx, arm, obs.reward);
  }
  return trace;
}

// Oracle that knows the problem complexity: OFUL+ with b fixed to
// max(||theta*||, 1).
template <class Env>
RegretTrace norm_oracle_run(const Env& env, double delta, long horizon,
                            std::uint64_t trial_seed) {
  double b = std::max(env.theta_norm(), 1.0);
  return oful_plus_fixed_run(env, b, 0, delta, delta, horizon, trial_seed);
}

// Plain UCB over realized arm means; the theta* = 0 reduction of the mixture
// model. Used as the context-free companion on clustered real-data arms.
template <class Env>
RegretTrace ucb1_run(const Env& env, long horizon, std::uint64_t trial_seed) {
  RegretTrace trace;
  trace.seed = trial_seed;
  std::vector<double> means(env.K(), 0.0);
  std::vector<long> counts(env.K(), 0);
  long t = 0;
  for (long i = 0; i < env.K() && t < horizon; ++i) {
    ++t;
    auto ctx = env.contexts(t);
    auto obs = env.observe(t, i, ctx);
    trace.record(obs.instant_regret);
    means[i] = obs.reward;
    counts[i] = 1;
  }
  while (t < horizon) {
    ++t;
    auto ctx = env.contexts(t);
    long arm = ucb1_select(means, counts, t, env.sigma());
    auto obs = env.observe(t, arm, ctx);
    trace.record(obs.instant_regret);
    means[arm] += (obs.reward - means[arm]) / static_cast<double>(counts[arm] + 1);
    counts[arm] += 1;
  }
  return trace;
}

}  // namespace alb

#endif  // ALB_POLICIES_ALB_NORM_HPP
