#ifndef ALB_POLICIES_ALB_DIM_FINITE_HPP
#define ALB_POLICIES_ALB_DIM_FINITE_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "alb/confidence.hpp"
#include "alb/envs.hpp"
#include "alb/policies/alb_dim.hpp"
#include "alb/policies/continuum_oful.hpp"
#include "alb/policies/schedule.hpp"
#include "alb/rng.hpp"
#include "alb/trace.hpp"

namespace alb {

// Feature-norm scaling b(delta) = tau * sqrt(2 ln(4TK/delta)); the explicit
// sub-Gaussian tail constant keeping all T*K observed feature norms below
// b(delta) with probability 1 - delta/4.
inline double feature_scale(double tau, long long T, long K, double delta) {
  if (!(tau > 0.0)) throw ContractViolation("feature_scale: tau must be > 0");
  return tau * std::sqrt(2.0 * std::log(4.0 * static_cast<double>(T) *
                                        static_cast<double>(K) / delta));
}

// Smallest 1-based ladder index whose dimension covers every active
// coordinate. An empty active set maps to the first model.
inline long ladder_model_index(const std::vector<long>& ladder,
                               const std::vector<int>& active) {
  long need = active.empty() ? 1 : active.back() + 1;
  for (size_t m = 0; m < ladder.size(); ++m)
    if (ladder[m] >= need) return static_cast<long>(m) + 1;
  return static_cast<long>(ladder.size());
}

struct AlbDimFiniteOptions {
  long long t0 = 100;
  double delta = 0.1;
  double threshold_base = 2.0;
  // When set, every phase runs at this fixed ladder index: ladder size M gives
  // the non-adaptive full-ladder baseline, m* gives the ladder oracle.
  std::optional<long> fixed_model;
};

// Finite-arm ALB-Dim: per phase the active set picks the smallest covering
// ladder dimension, the base learner is an ellipsoid index on truncated
// features scaled by 1/b(delta), exploration pulls arms uniformly, and the
// refit runs on full-dimension exploration features.
template <class Env>
RegretTrace alb_dim_finite_run(const Env& env, const AlbDimFiniteOptions& opt,
                               long horizon, std::uint64_t trial_seed,
                               std::uint64_t algo_tag = 4) {
  RegretTrace trace;
  trace.seed = trial_seed;
  const auto& inst = env.instance();
  const long d = env.d();
  const long K = env.K();
  const double b_delta = feature_scale(inst.tau, horizon, K, opt.delta);
  Eigen::VectorXd theta_hat = Eigen::VectorXd::Ones(d);
  RidgeState store = RidgeState::make(d, kRefitRidge);
  long t = 0;

  for (long phase = 0; t < horizon; ++phase) {
    EpochSchedule sched = dim_epoch(phase, opt.t0, opt.delta, opt.threshold_base);
    SupportEstimate active = support_threshold(theta_hat, sched.threshold);
    long model = opt.fixed_model ? *opt.fixed_model
                                 : ladder_model_index(inst.d_ladder, active.indices);
    long dm = inst.d_ladder[model - 1];
    trace.snapshots.push_back(
        {phase, SnapshotKind::ladder, static_cast<double>(model), {}});

    ContinuumOful inner(dm, env.sigma(), sched.slack);
    for (long long step = 0; step < sched.length && t < horizon; ++step) {
      ++t;
      auto feats = env.features(t);
      long best = 0;
      double best_val = -std::numeric_limits<double>::infinity();
      for (long a = 0; a < K; ++a) {
        double v = inner.index(feats[a].head(dm) / b_delta);
        if (v > best_val) {
          best_val = v;
          best = a;
        }
      }
      double r = env.reward(t, best, feats);
      trace.record(env.instant_regret(feats, best));
      inner.observe(feats[best].head(dm) / b_delta, r);
    }

    for (long long slot = 0; slot < sched.explore_len && t < horizon; ++slot) {
      ++t;
      CounterRng erng(detail::explore_key(trial_seed, phase, slot));
      long arm = static_cast<long>(erng.next_index(static_cast<std::uint64_t>(K)));
      auto feats = env.features(t);
      double r = env.reward(t, arm, feats);
      trace.record(env.instant_regret(feats, arm));
      ridge_update(store, feats[arm], r);
    }
    if (t >= horizon) break;
    theta_hat = ridge_solve(store);
  }
  return trace;
}

// Ladder-index trajectory of alb_dim_finite_run without the regret blocks;
// M_0 .. M_max_phase. Exploration draws and their noise are keyed exactly as
// in the full run.
inline std::vector<long> alb_dim_finite_ladder_trace(const FiniteEnv& env,
                                                     const AlbDimFiniteOptions& opt,
                                                     long max_phase,
                                                     std::uint64_t trial_seed) {
  const auto& inst = env.instance();
  const long d = env.d();
  const long K = env.K();
  Eigen::VectorXd theta_hat = Eigen::VectorXd::Ones(d);
  RidgeState store = RidgeState::make(d, kRefitRidge);
  std::vector<long> models;
  long long t = 0;
  for (long phase = 0; phase <= max_phase; ++phase) {
    EpochSchedule sched = dim_epoch(phase, opt.t0, opt.delta, opt.threshold_base);
    SupportEstimate active = support_threshold(theta_hat, sched.threshold);
    models.push_back(ladder_model_index(inst.d_ladder, active.indices));
    t += sched.length;
    for (long long slot = 0; slot < sched.explore_len; ++slot) {
      ++t;
      CounterRng erng(detail::explore_key(trial_seed, phase, slot));
      long arm = static_cast<long>(erng.next_index(static_cast<std::uint64_t>(K)));
      Eigen::VectorXd phi = env.feature(t, arm);
      ridge_update(store, phi, env.reward_from_feature(t, phi));
    }
    theta_hat = ridge_solve(store);
  }
  return models;
}

}  // namespace alb

#endif  // ALB_POLICIES_ALB_DIM_FINITE_HPP
