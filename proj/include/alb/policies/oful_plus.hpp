#ifndef ALB_POLICIES_OFUL_PLUS_HPP
#define ALB_POLICIES_OFUL_PLUS_HPP

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "alb/confidence.hpp"
#include "alb/errors.hpp"
#include "alb/ridge.hpp"

namespace alb {

// Ball radius maintained by the running policy: (sigma*sqrt(d) + b) /
// (rho_min*sqrt(t)) * sqrt(log(K*T~/delta)). The fully explicit k_delta form
// stays available for coverage checks; this compact form is what shrinks fast
// enough for the epoch refinements to track ||theta*||.
inline double oful_plus_radius(double b, long samples, const RadiusParams& p) {
  double t = static_cast<double>(std::max<long>(samples, 1));
  return (p.sigma * std::sqrt(static_cast<double>(p.d)) + b) /
         (p.rho_min * std::sqrt(t)) *
         std::sqrt(std::log(static_cast<double>(p.K) * static_cast<double>(p.horizon) /
                            p.delta));
}

struct ArmStat {
  long pulls = 0;
  double mean = 0.0;
};

// Bias-aware optimistic linear bandit. Per-arm sample means carry the mu~
// bonus; the shared theta* estimate lives in a lambda=1 ridge over
// bias-corrected rewards, wrapped in an L2 confidence ball.
struct OfulPlusState {
  RadiusParams params;
  std::vector<ArmStat> arms;
  RidgeState ridge;
  ConfidenceBall ball;
  long round = 0;  // select/observe rounds, seeds excluded

  double mu_tilde(long arm) const {
    return bias_bonus(arms[arm].mean, arms[arm].pulls, params);
  }
};

// Starts a run (or an epoch restart) from the K pure-exploration seed pulls:
// each arm's mean is its seed reward with count 1, and the ridge absorbs the
// K bias-corrected seed observations and nothing else.
inline OfulPlusState oful_plus_init(const RadiusParams& params,
                                    const std::vector<Eigen::VectorXd>& seed_contexts,
                                    const std::vector<double>& seed_rewards) {
  params.validate();
  if (seed_contexts.size() != static_cast<size_t>(params.K) ||
      seed_rewards.size() != static_cast<size_t>(params.K))
    throw ContractViolation("oful_plus_init: need one seed pull per arm");
  OfulPlusState s;
  s.params = params;
  s.arms.resize(params.K);
  s.ridge = RidgeState::make(params.d, 1.0);
  for (long i = 0; i < params.K; ++i) {
    s.arms[i].pulls = 1;
    s.arms[i].mean = seed_rewards[i];
    ridge_update(s.ridge, seed_contexts[i], seed_rewards[i] - s.mu_tilde(i));
  }
  s.ball.center = ridge_solve(s.ridge);
  s.ball.radius = oful_plus_radius(params.b, s.ridge.count, params);
  return s;
}

// Optimistic index of every arm; the inner maximum over the L2 ball is the
// closed form <alpha, center> + radius*||alpha||.
inline Eigen::VectorXd oful_plus_indexes(const OfulPlusState& s,
                                         const std::vector<Eigen::VectorXd>& contexts) {
  Eigen::VectorXd idx(s.params.K);
  for (long i = 0; i < s.params.K; ++i) {
    if (s.arms[i].pulls < 1)
      throw ContractViolation("oful_plus_select: arm " + std::to_string(i) +
                              " has no pulls; seed every arm first");
    idx(i) = s.mu_tilde(i) + contexts[i].dot(s.ball.center) +
             s.ball.radius * contexts[i].norm();
  }
  return idx;
}

// Ties break toward the lowest arm index.
inline long oful_plus_select(const OfulPlusState& s,
                             const std::vector<Eigen::VectorXd>& contexts) {
  Eigen::VectorXd idx = oful_plus_indexes(s, contexts);
  long best = 0;
  for (long i = 1; i < idx.size(); ++i)
    if (idx(i) > idx(best)) best = i;
  return best;
}

// The ridge row uses the pull-round mu~ (computed before the arm statistics
// absorb this reward).
inline void oful_plus_observe(OfulPlusState& s,
                              const std::vector<Eigen::VectorXd>& contexts, long arm,
                              double reward) {
  double correction = s.mu_tilde(arm);
  ArmStat& a = s.arms[arm];
  a.mean += (reward - a.mean) / static_cast<double>(a.pulls + 1);
  a.pulls += 1;
  ridge_update(s.ridge, contexts[arm], reward - correction);
  s.ball.center = ridge_solve(s.ridge);
  ++s.round;
  s.ball.radius = oful_plus_radius(s.params.b, s.ridge.count, s.params);
}

// Refined norm bound: the largest ||theta|| inside the confidence ball.
inline double norm_refine(const ConfidenceBall& ball) {
  return ball.center.norm() + ball.radius;
}

}  // namespace alb

#endif  // ALB_POLICIES_OFUL_PLUS_HPP
