#ifndef ALB_CONFIDENCE_HPP
#define ALB_CONFIDENCE_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "alb/errors.hpp"
#include "alb/ridge.hpp"

namespace alb {

// Inputs threaded through every confidence-width formula: the current norm
// bound b, the slack delta, the sub-Gaussian noise scale sigma, the context
// covariance floor rho_min, problem sizes and the epoch length.
struct RadiusParams {
  double b = 1.0;
  double delta = 0.1;
  double sigma = 1.0;
  double rho_min = 1.0;
  long d = 1;
  long K = 1;
  long horizon = 1;  // epoch length T~

  void validate() const {
    if (!(delta > 0.0 && delta < 1.0))
      throw ContractViolation("RadiusParams: delta must lie in (0,1)");
    if (!(rho_min > 0.0)) throw ContractViolation("RadiusParams: rho_min must be > 0");
    if (d < 1 || K < 1 || horizon < 1)
      throw ContractViolation("RadiusParams: d, K and horizon must be positive");
    if (b < 0.0) throw ContractViolation("RadiusParams: b must be nonnegative");
    if (sigma < 0.0) throw ContractViolation("RadiusParams: sigma must be nonnegative");
  }
};

// L2 ball around the regression estimate. Membership ||theta - center|| <= radius.
struct ConfidenceBall {
  Eigen::VectorXd center;
  double radius = 0.0;

  bool contains(const Eigen::VectorXd& theta) const {
    return (theta - center).norm() <= radius;
  }
};

// Active coordinates retained by magnitude thresholding, with the threshold
// that produced them.
struct SupportEstimate {
  std::vector<int> indices;  // sorted
  double threshold = 0.0;

  bool operator==(const SupportEstimate& o) const { return indices == o.indices; }
};

// Round count below which the confidence radius stays in its unscaled regime.
inline double t_min(const RadiusParams& p) {
  return (16.0 / (p.rho_min * p.rho_min) + 8.0 / (3.0 * p.rho_min)) *
         std::log(2.0 * static_cast<double>(p.d) * static_cast<double>(p.horizon) /
                  p.delta);
}

inline double m_delta(double b, long t, const RadiusParams& p) {
  if (t < 1) throw ContractViolation("m_delta: t must be >= 1");
  double d = static_cast<double>(p.d);
  return b + std::sqrt(2.0 * p.sigma * p.sigma *
                       (0.5 * d * std::log(1.0 + static_cast<double>(t) / d) +
                        std::log(1.0 / p.delta)));
}

inline double upsilon_delta(double b, long t, const RadiusParams& p) {
  if (t < 1) throw ContractViolation("upsilon_delta: t must be >= 1");
  double L = std::log(2.0 * static_cast<double>(p.K) * static_cast<double>(p.horizon) /
                      p.delta);
  double lead = (10.0 / 3.0) * (b + 2.0 + p.sigma * std::sqrt(1.0 + 2.0 * L));
  return lead * (L + std::sqrt(static_cast<double>(t) * L + L * L));
}

// Piecewise confidence radius. The boundary t == T_min takes the scaled
// (late-time) branch.
inline double k_delta(double b, long t, const RadiusParams& p) {
  if (t < 1) throw ContractViolation("k_delta: t must be >= 1");
  double m = m_delta(b, t, p);
  double u = upsilon_delta(b, t, p);
  double tmin = t_min(p);
  if (static_cast<double>(t) < tmin) return m + u;
  double shrink = 1.0 + 0.5 * p.rho_min * static_cast<double>(t);
  return m / std::sqrt(shrink) + u / shrink;
}

// Optimistic bias estimate mu~ for one arm given its empirical mean and pull
// count.
inline double bias_bonus(double mean, long pulls, const RadiusParams& p) {
  if (pulls < 1)
    throw ContractViolation("bias_bonus: every arm needs at least one pull");
  double n = static_cast<double>(pulls);
  double noise_term =
      p.sigma * std::sqrt((1.0 + n) / (n * n) *
                          (1.0 + 2.0 * std::log(static_cast<double>(p.K) *
                                                std::sqrt(1.0 + n) / p.delta)));
  double norm_term =
      p.b * std::sqrt(2.0 * static_cast<double>(p.d) / n * std::log(1.0 / p.delta));
  return mean + noise_term + norm_term;
}

struct InitialNormEstimate {
  double b1 = 1.0;
  Eigen::VectorXd theta_ls;
};

// Paired-differencing initial bound on ||theta*|| from 2*tau pulls of a single
// arm. Differencing cancels the arm bias; the unregularized least-squares
// estimate plus its high-probability error bound gives b1, floored at 1.
inline InitialNormEstimate initial_norm_estimate(const std::vector<double>& rewards,
                                                 const std::vector<Eigen::VectorXd>& contexts,
                                                 double sigma, double delta_s) {
  if (rewards.size() != contexts.size() || rewards.empty() || rewards.size() % 2 != 0)
    throw ContractViolation("initial_norm_estimate: needs 2*tau paired samples");
  long tau = static_cast<long>(rewards.size() / 2);
  long d = contexts.front().size();
  Eigen::MatrixXd X(tau, d);
  Eigen::VectorXd y(tau);
  for (long j = 0; j < tau; ++j) {
    X.row(j) = (contexts[2 * j] - contexts[2 * j + 1]).transpose();
    y(j) = rewards[2 * j] - rewards[2 * j + 1];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  if (qr.rank() < d)
    throw SingularMatrixError(
        "initial_norm_estimate: differenced design is rank deficient, increase tau",
        qr.rank(), d);
  InitialNormEstimate out;
  out.theta_ls = qr.solve(y);
  double bonus = std::sqrt(2.0) * sigma *
                 std::sqrt(static_cast<double>(d) / static_cast<double>(tau) *
                           std::log(1.0 / delta_s));
  out.b1 = std::max(out.theta_ls.norm() + bonus, 1.0);
  return out;
}

// Keeps coordinates with |theta_hat_j| >= epsilon / 2.
inline SupportEstimate support_threshold(const Eigen::VectorXd& theta_hat,
                                         double epsilon) {
  if (!(epsilon > 0.0)) throw ContractViolation("support_threshold: epsilon must be > 0");
  SupportEstimate s;
  s.threshold = epsilon / 2.0;
  for (long j = 0; j < theta_hat.size(); ++j)
    if (std::abs(theta_hat(j)) >= s.threshold) s.indices.push_back(static_cast<int>(j));
  return s;
}

namespace detail {
inline double t0_sqrt_bound(long d, double delta, double sigma, double lambda_min,
                            double lambda_max, double scale) {
  if (!(lambda_min > 0.0))
    throw ContractViolation("theoretical_t0: lambda_min must be > 0");
  if (lambda_max < lambda_min)
    throw ContractViolation("theoretical_t0: lambda_max must be >= lambda_min");
  double log_term = std::log(2.0 * static_cast<double>(d) / delta);
  double term1 = 32.0 * sigma * sigma / (lambda_min * lambda_min) * log_term;
  double term2 = (4.0 / 3.0) * (6.0 * lambda_max + lambda_min) *
                 (static_cast<double>(d) + lambda_max) / (lambda_min * lambda_min) *
                 log_term;
  return scale * std::max(term1, term2);
}
}  // namespace detail

// Smallest integer T0 with sqrt(T0) >= scale * max(noise term, covariance
// term). scale = 1 for the continuum setting; the finite-arm setting passes
// the feature scaling b(delta).
inline long long theoretical_t0(long d, double delta, double sigma, double lambda_min,
                                double lambda_max, double scale = 1.0) {
  double s = detail::t0_sqrt_bound(d, delta, sigma, lambda_min, lambda_max, scale);
  return static_cast<long long>(std::ceil(s * s));
}

// Sample count the T0 bound actually certifies (the ceil of sqrt(T0) before
// squaring); used by the L-infinity recovery checks.
inline long long t0_sample_count(long d, double delta, double sigma, double lambda_min,
                                 double lambda_max, double scale = 1.0) {
  return static_cast<long long>(
      std::ceil(detail::t0_sqrt_bound(d, delta, sigma, lambda_min, lambda_max, scale)));
}

}  // namespace alb

#endif  // ALB_CONFIDENCE_HPP
