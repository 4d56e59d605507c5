#ifndef ALB_ENVS_HPP
#define ALB_ENVS_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "alb/errors.hpp"
#include "alb/rng.hpp"

namespace alb {

enum class ContextLaw { standard_normal, uniform_sphere };

inline double rho_min_for(ContextLaw law, long d) {
  return law == ContextLaw::standard_normal ? 1.0 : 1.0 / static_cast<double>(d);
}

inline Eigen::VectorXd sample_uniform_sphere(long d, CounterRng& rng) {
  if (d < 1) throw ContractViolation("sample_uniform_sphere: d must be >= 1");
  Eigen::VectorXd x(d);
  for (long j = 0; j < d; ++j) x(j) = rng.next_gaussian();
  double n = x.norm();
  if (n == 0.0) {  // measure zero
    x.setZero();
    x(0) = 1.0;
    return x;
  }
  return x / n;
}

// ---------------------------------------------------------------------------
// K-armed mixture contextual bandit: reward(i) = mu_i + <alpha_i, theta*> + noise.

struct MixtureInstance {
  Eigen::VectorXd theta_star;
  Eigen::VectorXd biases;  // entries in [-1, 1]
  double sigma = 0.0;
  ContextLaw context_law = ContextLaw::standard_normal;
  double rho_min = 1.0;

  long d() const { return theta_star.size(); }
  long K() const { return biases.size(); }
};

inline MixtureInstance make_mixture(long d, long K, double theta_norm, double sigma,
                                    ContextLaw law, CounterRng& rng) {
  MixtureInstance inst;
  inst.theta_star = theta_norm * sample_uniform_sphere(d, rng);
  inst.biases.resize(K);
  for (long i = 0; i < K; ++i) inst.biases(i) = rng.next_uniform(-1.0, 1.0);
  inst.sigma = sigma;
  inst.context_law = law;
  inst.rho_min = rho_min_for(law, d);
  return inst;
}

inline Eigen::VectorXd sample_context(const MixtureInstance& inst, CounterRng& rng) {
  if (inst.context_law == ContextLaw::uniform_sphere)
    return sample_uniform_sphere(inst.d(), rng);
  Eigen::VectorXd x(inst.d());
  for (long j = 0; j < inst.d(); ++j) x(j) = rng.next_gaussian();
  return x;
}

inline std::vector<Eigen::VectorXd> sample_contexts(const MixtureInstance& inst,
                                                    CounterRng& rng) {
  std::vector<Eigen::VectorXd> out(inst.K());
  for (long i = 0; i < inst.K(); ++i) out[i] = sample_context(inst, rng);
  return out;
}

inline double arm_mean(const MixtureInstance& inst,
                       const std::vector<Eigen::VectorXd>& contexts, long arm) {
  return inst.biases(arm) + contexts[arm].dot(inst.theta_star);
}

inline double pull(const MixtureInstance& inst,
                   const std::vector<Eigen::VectorXd>& contexts, long arm,
                   CounterRng& rng) {
  if (arm < 0 || arm >= inst.K())
    throw ContractViolation("pull: arm index out of range");
  return arm_mean(inst, contexts, arm) + inst.sigma * rng.next_gaussian();
}

inline double instant_regret(const MixtureInstance& inst,
                             const std::vector<Eigen::VectorXd>& contexts, long arm) {
  double best = -std::numeric_limits<double>::infinity();
  for (long i = 0; i < inst.K(); ++i) best = std::max(best, arm_mean(inst, contexts, i));
  return best - arm_mean(inst, contexts, arm);
}

// One harness-facing round record. instant_regret stays hidden from policies.
struct RoundObservation {
  std::vector<Eigen::VectorXd> contexts;
  long chosen = 0;
  double reward = 0.0;
  double instant_regret = 0.0;
};

// Mixture world addressed by counter streams: draws at coordinates (t, arm)
// are identical across algorithms sharing the trial seed.
class MixtureEnv {
 public:
  MixtureEnv(MixtureInstance inst, std::uint64_t trial_seed)
      : inst_(std::move(inst)),
        ctx_key_(derive_key(trial_seed, {static_cast<std::uint64_t>(Stream::context)})),
        noise_key_(derive_key(trial_seed, {static_cast<std::uint64_t>(Stream::noise)})) {}

  const MixtureInstance& instance() const { return inst_; }
  long d() const { return inst_.d(); }
  long K() const { return inst_.K(); }
  double sigma() const { return inst_.sigma; }
  double rho_min() const { return inst_.rho_min; }
  double theta_norm() const { return inst_.theta_star.norm(); }

  std::vector<Eigen::VectorXd> contexts(long long t) const {
    std::vector<Eigen::VectorXd> out(inst_.K());
    for (long i = 0; i < inst_.K(); ++i) {
      CounterRng rng(derive_key(ctx_key_, {static_cast<std::uint64_t>(t),
                                           static_cast<std::uint64_t>(i)}));
      out[i] = sample_context(inst_, rng);
    }
    return out;
  }

  double reward(long long t, long arm, const std::vector<Eigen::VectorXd>& ctx) const {
    CounterRng rng(derive_key(noise_key_, {static_cast<std::uint64_t>(t),
                                           static_cast<std::uint64_t>(arm)}));
    return pull(inst_, ctx, arm, rng);
  }

  RoundObservation observe(long long t, long arm,
                           const std::vector<Eigen::VectorXd>& ctx) const {
    RoundObservation obs;
    obs.contexts = ctx;
    obs.chosen = arm;
    obs.reward = reward(t, arm, ctx);
    obs.instant_regret = instant_regret(inst_, ctx, arm);
    return obs;
  }

 private:
  MixtureInstance inst_;
  std::uint64_t ctx_key_;
  std::uint64_t noise_key_;
};

// ---------------------------------------------------------------------------
// Sparse continuum linear bandit over the unit ball: reward(x) = <x, theta*> + noise.

struct ContinuumInstance {
  Eigen::VectorXd theta_star;  // ||theta*|| <= 1
  long d_star = 0;
  double gamma = 0.0;
  double sigma = 0.0;

  long d() const { return theta_star.size(); }
  std::vector<int> support() const {
    std::vector<int> s;
    for (long j = 0; j < theta_star.size(); ++j)
      if (theta_star(j) != 0.0) s.push_back(static_cast<int>(j));
    return s;
  }
};

// Nonzero coordinates sit on a random d*-subset with magnitude gamma and
// random signs, so gamma is exactly the minimum nonzero magnitude.
inline ContinuumInstance make_continuum(long d, long d_star, double gamma, double sigma,
                                        CounterRng& rng) {
  if (d_star < 1 || d_star > d)
    throw ContractViolation("make_continuum: need 1 <= d_star <= d");
  if (gamma * std::sqrt(static_cast<double>(d_star)) > 1.0 + 1e-12)
    throw ContractViolation("make_continuum: gamma*sqrt(d_star) must be <= 1");
  std::vector<long> idx(d);
  std::iota(idx.begin(), idx.end(), 0);
  for (long j = 0; j < d_star; ++j) {
    long k = j + static_cast<long>(rng.next_index(static_cast<std::uint64_t>(d - j)));
    std::swap(idx[j], idx[k]);
  }
  ContinuumInstance inst;
  inst.theta_star = Eigen::VectorXd::Zero(d);
  for (long j = 0; j < d_star; ++j)
    inst.theta_star(idx[j]) = rng.next_unit() < 0.5 ? -gamma : gamma;
  inst.d_star = d_star;
  inst.gamma = gamma;
  inst.sigma = sigma;
  return inst;
}

class ContinuumEnv {
 public:
  ContinuumEnv(ContinuumInstance inst, std::uint64_t trial_seed)
      : inst_(std::move(inst)),
        noise_key_(derive_key(trial_seed, {static_cast<std::uint64_t>(Stream::noise)})) {}

  const ContinuumInstance& instance() const { return inst_; }
  long d() const { return inst_.d(); }
  double sigma() const { return inst_.sigma; }

  double reward(long long t, const Eigen::VectorXd& x) const {
    CounterRng rng(noise_key_, static_cast<std::uint64_t>(2 * t));
    return x.dot(inst_.theta_star) + inst_.sigma * rng.next_gaussian();
  }

  // Best mean over the unit ball is ||theta*||, attained at theta*/||theta*||.
  double instant_regret(const Eigen::VectorXd& x) const {
    return inst_.theta_star.norm() - x.dot(inst_.theta_star);
  }

 private:
  ContinuumInstance inst_;
  std::uint64_t noise_key_;
};

// ---------------------------------------------------------------------------
// Nested-feature-map finite-arm bandit: reward(a) = <phi^M(x_t,a), theta*> + noise,
// where truncating phi^M to the first d_m coordinates gives phi^m.

struct NestedFiniteInstance {
  std::vector<long> d_ladder;  // strictly increasing, back() = d
  Eigen::VectorXd theta_star;  // supported on first d_{m_star} coordinates
  long K = 0;
  long m_star = 1;  // 1-based ladder index of the true model
  double tau = 1.0;
  double sigma = 0.0;
  double gamma = 0.0;

  long d() const { return d_ladder.back(); }
  long M() const { return static_cast<long>(d_ladder.size()); }
};

inline NestedFiniteInstance make_nested_finite(std::vector<long> ladder, long m_star,
                                               long K, double gamma, double tau,
                                               double sigma, CounterRng& rng) {
  if (ladder.empty() || m_star < 1 || m_star > static_cast<long>(ladder.size()))
    throw ContractViolation("make_nested_finite: invalid ladder or m_star");
  for (size_t i = 1; i < ladder.size(); ++i)
    if (ladder[i] <= ladder[i - 1])
      throw ContractViolation("make_nested_finite: ladder must be strictly increasing");
  NestedFiniteInstance inst;
  inst.d_ladder = std::move(ladder);
  inst.theta_star = Eigen::VectorXd::Zero(inst.d());
  long dm = inst.d_ladder[m_star - 1];
  for (long j = 0; j < dm; ++j)
    inst.theta_star(j) = rng.next_unit() < 0.5 ? -gamma : gamma;
  inst.K = K;
  inst.m_star = m_star;
  inst.tau = tau;
  inst.sigma = sigma;
  inst.gamma = gamma;
  return inst;
}

class FiniteEnv {
 public:
  FiniteEnv(NestedFiniteInstance inst, std::uint64_t trial_seed)
      : inst_(std::move(inst)),
        feat_key_(derive_key(trial_seed, {static_cast<std::uint64_t>(Stream::context)})),
        noise_key_(derive_key(trial_seed, {static_cast<std::uint64_t>(Stream::noise)})) {}

  const NestedFiniteInstance& instance() const { return inst_; }
  long d() const { return inst_.d(); }
  long K() const { return inst_.K; }
  double sigma() const { return inst_.sigma; }

  // Full-dimension feature of one arm; lower maps are prefixes of this draw.
  Eigen::VectorXd feature(long long t, long arm) const {
    CounterRng rng(derive_key(feat_key_, {static_cast<std::uint64_t>(t),
                                          static_cast<std::uint64_t>(arm)}));
    double scale = inst_.tau / std::sqrt(static_cast<double>(inst_.d()));
    Eigen::VectorXd phi(inst_.d());
    for (long j = 0; j < inst_.d(); ++j) phi(j) = scale * rng.next_gaussian();
    return phi;
  }

  std::vector<Eigen::VectorXd> features(long long t) const {
    std::vector<Eigen::VectorXd> out(inst_.K);
    for (long a = 0; a < inst_.K; ++a) out[a] = feature(t, a);
    return out;
  }

  double reward_from_feature(long long t, const Eigen::VectorXd& phi) const {
    CounterRng rng(noise_key_, static_cast<std::uint64_t>(2 * t));
    return phi.dot(inst_.theta_star) + inst_.sigma * rng.next_gaussian();
  }

  double reward(long long t, long arm, const std::vector<Eigen::VectorXd>& feats) const {
    return reward_from_feature(t, feats[arm]);
  }

  double instant_regret(const std::vector<Eigen::VectorXd>& feats, long arm) const {
    double best = -std::numeric_limits<double>::infinity();
    for (long a = 0; a < inst_.K; ++a)
      best = std::max(best, feats[a].dot(inst_.theta_star));
    return best - feats[arm].dot(inst_.theta_star);
  }

 private:
  NestedFiniteInstance inst_;
  std::uint64_t feat_key_;
  std::uint64_t noise_key_;
};

}  // namespace alb

#endif  // ALB_ENVS_HPP
