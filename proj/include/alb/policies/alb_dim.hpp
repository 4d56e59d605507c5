#ifndef ALB_POLICIES_ALB_DIM_HPP
#define ALB_POLICIES_ALB_DIM_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <numeric>
#include <vector>

#include "alb/confidence.hpp"
#include "alb/envs.hpp"
#include "alb/policies/continuum_oful.hpp"
#include "alb/policies/schedule.hpp"
#include "alb/ridge.hpp"
#include "alb/rng.hpp"
#include "alb/trace.hpp"

namespace alb {

struct AlbDimOptions {
  long long t0 = 100;
  double delta = 0.1;
  double threshold_base = 2.0;  // eps_i = threshold_base^{-i}
  long candidates = 512;
};

// The early refits run on fewer than d exploration rows; this pseudo-ridge
// keeps them solvable and is below test tolerances once the store has >= d
// samples.
inline constexpr double kRefitRidge = 1e-8;

namespace detail {

inline Eigen::VectorXd embed_active(const Eigen::VectorXd& x_active,
                                    const std::vector<int>& active, long d) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(d);
  for (size_t i = 0; i < active.size(); ++i) x(active[i]) = x_active(i);
  return x;
}

inline std::uint64_t explore_key(std::uint64_t trial_seed, long phase, long long slot) {
  return derive_key(trial_seed, {static_cast<std::uint64_t>(Stream::explore_arm),
                                 static_cast<std::uint64_t>(phase),
                                 static_cast<std::uint64_t>(slot)});
}

}  // namespace detail

// Adaptive Linear Bandit, dimension mode: phases of (restricted OFUL regret
// block, uniform-sphere exploration block, full-store least-squares refit),
// with the active set re-thresholded at every phase start. theta_hat starts
// at all-ones so phase 0 runs on the full coordinate set.
template <class Env>
RegretTrace alb_dim_run(const Env& env, const AlbDimOptions& opt, long horizon,
                        std::uint64_t trial_seed, std::uint64_t algo_tag = 1) {
  RegretTrace trace;
  trace.seed = trial_seed;
  const long d = env.d();
  Eigen::VectorXd theta_hat = Eigen::VectorXd::Ones(d);
  RidgeState store = RidgeState::make(d, kRefitRidge);
  long t = 0;

  for (long phase = 0; t < horizon; ++phase) {
    EpochSchedule sched = dim_epoch(phase, opt.t0, opt.delta, opt.threshold_base);
    SupportEstimate active = support_threshold(theta_hat, sched.threshold);
    Snapshot snap;
    snap.epoch = phase;
    snap.kind = SnapshotKind::support;
    snap.indices = active.indices;
    trace.snapshots.push_back(snap);

    CounterRng policy_rng(derive_key(
        trial_seed, {static_cast<std::uint64_t>(Stream::policy), algo_tag,
                     static_cast<std::uint64_t>(phase)}));
    long m = static_cast<long>(active.indices.size());
    if (m > 0) {
      ContinuumOful inner(m, env.sigma(), sched.slack);
      for (long long step = 0; step < sched.length && t < horizon; ++step) {
        ++t;
        Eigen::VectorXd x_active = inner.select(opt.candidates, policy_rng);
        Eigen::VectorXd x = detail::embed_active(x_active, active.indices, d);
        double r = env.reward(t, x);
        trace.record(env.instant_regret(x));
        inner.observe(x_active, r);
      }
    } else {
      // Empty active set: nothing to exploit, fall back to uniform play.
      for (long long step = 0; step < sched.length && t < horizon; ++step) {
        ++t;
        Eigen::VectorXd x = sample_uniform_sphere(d, policy_rng);
        trace.record(env.instant_regret(x));
      }
    }

    for (long long slot = 0; slot < sched.explore_len && t < horizon; ++slot) {
      ++t;
      CounterRng erng(detail::explore_key(trial_seed, phase, slot));
      Eigen::VectorXd x = sample_uniform_sphere(d, erng);
      double r = env.reward(t, x);
      trace.record(env.instant_regret(x));
      ridge_update(store, x, r);
    }
    if (t >= horizon) break;
    theta_hat = ridge_solve(store);
  }
  return trace;
}

// D_i distribution of alb_dim_run without paying for the regret blocks: the
// active sets depend only on the exploration stream, whose draws are keyed by
// (phase, slot) and whose noise is keyed by the slot's global round index.
// Returns D_0 .. D_max_phase.
inline std::vector<SupportEstimate> alb_dim_support_trace(const ContinuumEnv& env,
                                                          const AlbDimOptions& opt,
                                                          long max_phase,
                                                          std::uint64_t trial_seed) {
  const long d = env.d();
  Eigen::VectorXd theta_hat = Eigen::VectorXd::Ones(d);
  RidgeState store = RidgeState::make(d, kRefitRidge);
  std::vector<SupportEstimate> supports;
  long long t = 0;
  for (long phase = 0; phase <= max_phase; ++phase) {
    EpochSchedule sched = dim_epoch(phase, opt.t0, opt.delta, opt.threshold_base);
    supports.push_back(support_threshold(theta_hat, sched.threshold));
    t += sched.length;  // regret block rounds, not simulated
    for (long long slot = 0; slot < sched.explore_len; ++slot) {
      ++t;
      CounterRng erng(detail::explore_key(trial_seed, phase, slot));
      Eigen::VectorXd x = sample_uniform_sphere(d, erng);
      ridge_update(store, x, env.reward(t, x));
    }
    theta_hat = ridge_solve(store);
  }
  return supports;
}

// Fixed-active-set ellipsoid learner over the whole horizon. With `active` =
// all coordinates this is the non-adaptive full-dimension OFUL baseline; with
// the true support it is the dimension oracle.
template <class Env>
RegretTrace continuum_oful_run(const Env& env, const std::vector<int>& active,
                               double delta, long candidates, long horizon,
                               std::uint64_t trial_seed, std::uint64_t algo_tag) {
  RegretTrace trace;
  trace.seed = trial_seed;
  const long d = env.d();
  ContinuumOful inner(static_cast<long>(active.size()), env.sigma(), delta);
  CounterRng policy_rng(derive_key(
      trial_seed, {static_cast<std::uint64_t>(Stream::policy), algo_tag}));
  for (long t = 1; t <= horizon; ++t) {
    Eigen::VectorXd x_active = inner.select(candidates, policy_rng);
    Eigen::VectorXd x = detail::embed_active(x_active, active, d);
    double r = env.reward(t, x);
    trace.record(env.instant_regret(x));
    inner.observe(x_active, r);
  }
  return trace;
}

template <class Env>
RegretTrace dim_oracle_run(const Env& env, const std::vector<int>& support,
                           double delta, long candidates, long horizon,
                           std::uint64_t trial_seed) {
  return continuum_oful_run(env, support, delta, candidates, horizon, trial_seed, 3);
}

template <class Env>
RegretTrace full_dim_oful_run(const Env& env, double delta, long candidates,
                              long horizon, std::uint64_t trial_seed) {
  std::vector<int> all(env.d());
  std::iota(all.begin(), all.end(), 0);
  return continuum_oful_run(env, all, delta, candidates, horizon, trial_seed, 2);
}

}  // namespace alb

#endif  // ALB_POLICIES_ALB_DIM_HPP
