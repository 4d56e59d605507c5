#ifndef ALB_POLICIES_CONTINUUM_OFUL_HPP
#define ALB_POLICIES_CONTINUUM_OFUL_HPP

#include <Eigen/Dense>
#include <cmath>

#include "alb/envs.hpp"
#include "alb/errors.hpp"
#include "alb/ridge.hpp"
#include "alb/rng.hpp"

namespace alb {

namespace detail {
// Rank-1 update L L^T += w w^T in place.
inline void chol_rank1_update(Eigen::MatrixXd& L, Eigen::VectorXd w) {
  const long m = L.rows();
  for (long k = 0; k < m; ++k) {
    double r = std::hypot(L(k, k), w(k));
    double c = r / L(k, k);
    double s = w(k) / L(k, k);
    L(k, k) = r;
    for (long i = k + 1; i < m; ++i) {
      L(i, k) = (L(i, k) + s * w(i)) / c;
      w(i) = c * w(i) - s * L(i, k);
    }
  }
}
}  // namespace detail

// Ellipsoid-index linear bandit state over a fixed active dimension m:
// V = I + sum x x^T kept as a Cholesky factor, index(x) = <x, theta_hat> +
// beta * sqrt(x^T V^{-1} x).
class ContinuumOful {
 public:
  ContinuumOful(long m, double sigma, double delta)
      : m_(m), sigma_(sigma), delta_(delta) {
    chol_ = Eigen::MatrixXd::Identity(m, m);
    moment_ = Eigen::VectorXd::Zero(m);
    theta_hat_ = Eigen::VectorXd::Zero(m);
  }

  long dim() const { return m_; }
  long samples() const { return n_; }
  const Eigen::VectorXd& theta_hat() const { return theta_hat_; }

  // Self-normalized bound with lambda = 1 and ||theta*|| <= 1.
  double beta() const {
    double md = static_cast<double>(m_);
    return 1.0 + sigma_ * std::sqrt(2.0 * std::log(1.0 / delta_) +
                                    md * std::log(1.0 + static_cast<double>(n_) / md));
  }

  double quad_form(const Eigen::VectorXd& x) const {
    return chol_.triangularView<Eigen::Lower>().solve(x).squaredNorm();
  }

  double index(const Eigen::VectorXd& x) const {
    return x.dot(theta_hat_) + beta() * std::sqrt(quad_form(x));
  }

  // Candidate-set maximization of the index over the unit sphere: the greedy
  // direction theta_hat/||theta_hat|| plus `candidates` uniform draws.
  Eigen::VectorXd select(long candidates, CounterRng& rng) const {
    Eigen::VectorXd best;
    double best_val = -std::numeric_limits<double>::infinity();
    if (theta_hat_.norm() > 0.0) {
      best = theta_hat_ / theta_hat_.norm();
      best_val = index(best);
    }
    for (long c = 0; c < candidates; ++c) {
      Eigen::VectorXd x = sample_uniform_sphere(m_, rng);
      double v = index(x);
      if (v > best_val) {
        best_val = v;
        best = x;
      }
    }
    if (best.size() == 0) best = Eigen::VectorXd::Zero(m_);  // no candidates asked
    return best;
  }

  void observe(const Eigen::VectorXd& x, double reward) {
    detail::chol_rank1_update(chol_, x);
    moment_.noalias() += reward * x;
    ++n_;
    theta_hat_ = chol_.triangularView<Eigen::Lower>().transpose().solve(
        chol_.triangularView<Eigen::Lower>().solve(moment_));
  }

 private:
  long m_;
  double sigma_;
  double delta_;
  Eigen::MatrixXd chol_;
  Eigen::VectorXd moment_;
  Eigen::VectorXd theta_hat_;
  long n_ = 0;
};

// Spec-surface form of the same selection rule, driven by a RidgeState. Used
// directly by tests and small callers; the running policies keep the
// factorized ContinuumOful which computes the identical index.
inline Eigen::VectorXd oful_continuum_select(const RidgeState& state, double beta,
                                             long candidates, CounterRng& rng) {
  if (beta < 0.0) throw ContractViolation("oful_continuum_select: beta must be >= 0");
  Eigen::VectorXd theta_hat = ridge_solve(state);
  Eigen::LDLT<Eigen::MatrixXd> ldlt(state.gram);
  auto index = [&](const Eigen::VectorXd& x) {
    return x.dot(theta_hat) + beta * std::sqrt(x.dot(ldlt.solve(x)));
  };
  Eigen::VectorXd best;
  double best_val = -std::numeric_limits<double>::infinity();
  if (theta_hat.norm() > 0.0) {
    best = theta_hat / theta_hat.norm();
    best_val = index(best);
  }
  for (long c = 0; c < candidates; ++c) {
    Eigen::VectorXd x = sample_uniform_sphere(state.dim, rng);
    double v = index(x);
    if (v > best_val) {
      best_val = v;
      best = x;
    }
  }
  if (best.size() == 0) best = Eigen::VectorXd::Zero(state.dim);
  return best;
}

}  // namespace alb

#endif  // ALB_POLICIES_CONTINUUM_OFUL_HPP
