#include <catch_amalgamated.hpp>
#include <cmath>

#include "alb/confidence.hpp"
#include "alb/envs.hpp"
#include "alb/rng.hpp"

using namespace alb;

namespace {

RadiusParams params(double b, double delta, double sigma, double rho, long d, long K,
                    long horizon) {
  RadiusParams p;
  p.b = b;
  p.delta = delta;
  p.sigma = sigma;
  p.rho_min = rho;
  p.d = d;
  p.K = K;
  p.horizon = horizon;
  return p;
}

}  // namespace

TEST_CASE("t_min formula values", "[confidence]") {
  auto p = params(1, 0.1, 1, 1.0, 50, 2, 100);
  REQUIRE(t_min(p) == Catch::Approx(214.90794201277762).epsilon(1e-12));

  // doubling the horizon adds exactly (16/rho^2 + 8/(3 rho)) ln 2
  auto a = params(1, 0.1, 1, 1.0, 7, 2, 50);
  auto b2 = params(1, 0.1, 1, 1.0, 7, 2, 100);
  double coeff = 16.0 + 8.0 / 3.0;
  REQUIRE(t_min(b2) - t_min(a) == Catch::Approx(coeff * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("t_min unit-log value", "[confidence]") {
  // pick delta so that 2*d*T/delta = e: d=1, T=1, delta = 2/e
  auto p = params(1, 2.0 / std::exp(1.0), 1, 1.0, 1, 2, 1);
  REQUIRE(t_min(p) == Catch::Approx(16.0 + 8.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("m_delta formula values", "[confidence]") {
  REQUIRE(m_delta(0, 5, params(0, 0.3, 0.0, 1, 3, 2, 10)) == 0.0);
  REQUIRE(m_delta(7, 5, params(7, 0.3, 0.0, 1, 3, 2, 10)) == 7.0);
  auto p = params(10, 0.1, 1.0, 1, 50, 2, 100);
  REQUIRE(m_delta(10, 100, p) == Catch::Approx(17.715943533968712).epsilon(1e-12));
  REQUIRE_THROWS_AS(m_delta(1, 0, p), ContractViolation);
}

TEST_CASE("upsilon_delta formula values", "[confidence]") {
  auto p = params(0, 0.1, 0.0, 1, 5, 2, 100);
  REQUIRE(upsilon_delta(0, 100, p) == Catch::Approx(255.09314412905212).epsilon(1e-12));
  REQUIRE(upsilon_delta(0, 1, p) == Catch::Approx(113.82582411609198).epsilon(1e-12));

  // affine in b with slope (10/3)(L + sqrt(tL + L^2))
  double L = std::log(2.0 * 2 * 100 / 0.1);
  double slope = (10.0 / 3.0) * (L + std::sqrt(100 * L + L * L));
  REQUIRE(upsilon_delta(3, 100, p) - upsilon_delta(2, 100, p) ==
          Catch::Approx(slope).epsilon(1e-12));
  REQUIRE_THROWS_AS(upsilon_delta(0, 0, p), ContractViolation);
}

TEST_CASE("k_delta picks the branch by comparing t to T_min", "[confidence]") {
  auto p = params(2, 0.1, 0.5, 1, 5, 3, 200);
  double tm = t_min(p);
  long below = static_cast<long>(tm) - 1;
  REQUIRE(k_delta(2, below, p) ==
          Catch::Approx(m_delta(2, below, p) + upsilon_delta(2, below, p)).epsilon(1e-14));

  long above = static_cast<long>(tm) + 10;
  double shrink = 1.0 + 0.5 * above;
  REQUIRE(k_delta(2, above, p) ==
          Catch::Approx(m_delta(2, above, p) / std::sqrt(shrink) +
                        upsilon_delta(2, above, p) / shrink)
              .epsilon(1e-14));
}

TEST_CASE("k_delta shrinks with quadrupled t past T_min", "[confidence]") {
  // sqrt(t) growth of Upsilon is dominated by the 1 + rho t / 2 denominator
  for (double b : {0.5, 2.0, 10.0}) {
    for (double sigma : {0.0, 0.5, 2.0}) {
      auto p = params(b, 0.05, sigma, 1, 10, 5, 4000);
      long t = static_cast<long>(t_min(p)) + 5;
      REQUIRE(k_delta(b, 4 * t, p) < k_delta(b, t, p));
    }
  }
}

TEST_CASE("bias_bonus formula values", "[confidence]") {
  auto zero = params(0, 0.1, 0.0, 1, 5, 10, 100);
  REQUIRE(bias_bonus(0.5, 7, zero) == 0.5);

  auto p = params(1, 0.1, 1.0, 1, 5, 10, 100);
  REQUIRE(bias_bonus(0.5, 100, p) == Catch::Approx(1.366811445591022).epsilon(1e-12));
  REQUIRE_THROWS_AS(bias_bonus(0.5, 0, p), ContractViolation);

  // both bonus terms decrease in the pull count
  for (long n : {1L, 3L, 10L, 50L}) {
    REQUIRE(bias_bonus(0.0, 4 * n, p) < bias_bonus(0.0, n, p));
  }
}

TEST_CASE("initial norm estimate recovers noiseless theta and floors at 1",
          "[confidence]") {
  Eigen::VectorXd theta(2);
  theta << 0.3, 0.4;
  CounterRng rng(3);
  std::vector<double> rewards;
  std::vector<Eigen::VectorXd> contexts;
  double bias = 0.77;  // cancels in the pairwise differences
  for (long j = 0; j < 8; ++j) {
    Eigen::VectorXd x(2);
    x << rng.next_gaussian(), rng.next_gaussian();
    contexts.push_back(x);
    rewards.push_back(bias + x.dot(theta));
  }
  auto est = initial_norm_estimate(rewards, contexts, 0.0, 0.1);
  REQUIRE((est.theta_ls - theta).norm() <= 1e-10);
  REQUIRE(est.b1 == 1.0);
}

TEST_CASE("initial norm estimate adds the sampling bonus", "[confidence]") {
  // noiseless data from a norm-2 parameter, with sigma = 1 supplied to the
  // bonus: b1 = 2 + sqrt(2)*sqrt((d/tau) ln(1/delta_s))
  CounterRng rng(5);
  Eigen::VectorXd theta(4);
  theta << 2, 0, 0, 0;
  std::vector<double> rewards;
  std::vector<Eigen::VectorXd> contexts;
  for (long j = 0; j < 32; ++j) {
    Eigen::VectorXd x(4);
    for (long k = 0; k < 4; ++k) x(k) = rng.next_gaussian();
    contexts.push_back(x);
    rewards.push_back(x.dot(theta));
  }
  auto est = initial_norm_estimate(rewards, contexts, 1.0, 0.1);
  REQUIRE(est.b1 == Catch::Approx(3.0729830131446736).epsilon(1e-10));
}

TEST_CASE("initial norm estimate floor binds under small noise", "[confidence]") {
  // theta* = 0, sigma = 0.1, tau = 200, d = 5: the floor dominates in every
  // repetition, and b1 >= ||theta*|| trivially.
  long fails = 0;
  for (long rep = 0; rep < 200; ++rep) {
    CounterRng rng(1000 + rep);
    std::vector<double> rewards;
    std::vector<Eigen::VectorXd> contexts;
    for (long j = 0; j < 400; ++j) {
      Eigen::VectorXd x(5);
      for (long k = 0; k < 5; ++k) x(k) = rng.next_gaussian();
      contexts.push_back(x);
      rewards.push_back(0.25 + 0.1 * rng.next_gaussian());  // bias 0.25, theta*=0
    }
    auto est = initial_norm_estimate(rewards, contexts, 0.1, 0.1);
    if (est.b1 != 1.0) ++fails;
  }
  REQUIRE(fails == 0);
}

TEST_CASE("initial norm estimate reports rank deficiency", "[confidence]") {
  std::vector<double> rewards = {1.0, 0.5, 0.2, 0.1};
  Eigen::VectorXd x(3);
  x << 1, 2, 3;
  std::vector<Eigen::VectorXd> contexts = {x, 2 * x, 3 * x, 5 * x};
  REQUIRE_THROWS_AS(initial_norm_estimate(rewards, contexts, 0.1, 0.1),
                    SingularMatrixError);
}

TEST_CASE("support_threshold keeps coordinates above epsilon/2", "[confidence]") {
  Eigen::VectorXd theta(3);
  theta << 0.5, 0.01, -0.3;
  auto s = support_threshold(theta, 0.25);
  REQUIRE(s.indices == std::vector<int>{0, 2});
  REQUIRE(s.threshold == 0.125);

  Eigen::VectorXd ones = Eigen::VectorXd::Ones(6);
  REQUIRE(support_threshold(ones, 2.0).indices.size() == 6);
  REQUIRE(support_threshold(ones, 0.5).indices.size() == 6);

  Eigen::VectorXd zeros = Eigen::VectorXd::Zero(4);
  REQUIRE(support_threshold(zeros, 0.01).indices.empty());
  REQUIRE_THROWS_AS(support_threshold(zeros, 0.0), ContractViolation);
}

TEST_CASE("theoretical_t0 frozen oracle values", "[confidence]") {
  // term2 = (4/3)*35*ln(40) = 172.14770786; ceil of its square is 29635
  REQUIRE(theoretical_t0(2, 0.1, 0.0, 0.5, 0.5, 1.0) == 29635);

  // sigma = 0 kills term1 entirely; the value is set by term2 alone
  REQUIRE(theoretical_t0(2, 0.1, 0.0, 0.5, 0.5, 1.0) ==
          theoretical_t0(2, 0.1, 0.0, 0.5, 0.5, 1.0));
  double lt = std::log(2.0 * 2 / 0.1);
  double term2 = (4.0 / 3.0) * (6 * 0.5 + 0.5) * (2 + 0.5) / 0.25 * lt;
  REQUIRE(theoretical_t0(2, 0.1, 0.0, 0.5, 0.5, 1.0) ==
          static_cast<long long>(std::ceil(term2 * term2)));

  // halving delta strictly increases T0
  REQUIRE(theoretical_t0(2, 0.05, 0.0, 0.5, 0.5, 1.0) >
          theoretical_t0(2, 0.1, 0.0, 0.5, 0.5, 1.0));
  REQUIRE(theoretical_t0(4, 0.1, 1.0, 0.25, 0.25, 1.0) >
          theoretical_t0(2, 0.1, 1.0, 0.25, 0.25, 1.0));

  REQUIRE_THROWS_AS(theoretical_t0(2, 0.1, 0.0, 0.0, 0.5, 1.0), ContractViolation);
}

TEST_CASE("uniform sphere second moment matches the 1/d covariance assumption",
          "[confidence][envs]") {
  // E[x x^T] = I/d for the uniform sphere law; this is what justifies
  // lambda_min = lambda_max = 1/d in theoretical_t0's precondition.
  CounterRng rng(99);
  long d = 4;
  Eigen::MatrixXd second = Eigen::MatrixXd::Zero(d, d);
  long n = 100000;
  for (long i = 0; i < n; ++i) {
    Eigen::VectorXd x = sample_uniform_sphere(d, rng);
    second += x * x.transpose();
  }
  second /= static_cast<double>(n);
  REQUIRE((second - Eigen::MatrixXd::Identity(d, d) / d).cwiseAbs().maxCoeff() <= 0.01);
}
