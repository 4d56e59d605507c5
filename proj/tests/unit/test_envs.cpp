#include <catch_amalgamated.hpp>
#include <cmath>

#include "alb/envs.hpp"
#include "alb/trace.hpp"

using namespace alb;

TEST_CASE("uniform sphere draws are unit norm and sign-symmetric", "[envs]") {
  CounterRng rng(4);
  for (long d : {1L, 2L, 5L, 17L}) {
    for (long i = 0; i < 50; ++i) {
      REQUIRE(std::abs(sample_uniform_sphere(d, rng).norm() - 1.0) <= 1e-12);
    }
  }
  CounterRng rng1(5);
  long positive = 0;
  for (long i = 0; i < 10000; ++i) {
    double v = sample_uniform_sphere(1, rng1)(0);
    REQUIRE((v == 1.0 || v == -1.0));
    if (v > 0) ++positive;
  }
  REQUIRE(std::abs(positive / 10000.0 - 0.5) <= 0.02);
}

TEST_CASE("standard normal contexts have zero per-coordinate mean", "[envs]") {
  CounterRng irng(6);
  MixtureInstance inst =
      make_mixture(3, 4, 1.0, 0.5, ContextLaw::standard_normal, irng);
  CounterRng rng(7);
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(3);
  long n = 100000;
  for (long i = 0; i < n; ++i) mean += sample_context(inst, rng);
  mean /= static_cast<double>(n);
  REQUIRE(mean.cwiseAbs().maxCoeff() <= 3e-2);
}

TEST_CASE("uniform sphere contexts are normalized and seeds reproduce streams",
          "[envs]") {
  CounterRng irng(8);
  MixtureInstance inst = make_mixture(4, 3, 0.5, 0.1, ContextLaw::uniform_sphere, irng);
  REQUIRE(inst.rho_min == 0.25);
  CounterRng a(42), b(42);
  for (long i = 0; i < 20; ++i) {
    auto ca = sample_contexts(inst, a);
    auto cb = sample_contexts(inst, b);
    for (long k = 0; k < inst.K(); ++k) {
      REQUIRE(std::abs(ca[k].norm() - 1.0) <= 1e-12);
      REQUIRE(ca[k] == cb[k]);
    }
  }
}

TEST_CASE("pull decomposes into bias plus inner product plus noise", "[envs]") {
  CounterRng irng(9);
  MixtureInstance inst = make_mixture(3, 4, 0.7, 0.0, ContextLaw::standard_normal, irng);
  CounterRng rng(10);
  auto ctx = sample_contexts(inst, rng);
  for (long arm = 0; arm < 4; ++arm) {
    REQUIRE(pull(inst, ctx, arm, rng) ==
            inst.biases(arm) + ctx[arm].dot(inst.theta_star));
  }
  REQUIRE_THROWS_AS(pull(inst, ctx, 4, rng), ContractViolation);

  // theta* = 0 reduces to the plain multi-armed bandit
  MixtureInstance mab = inst;
  mab.theta_star.setZero();
  auto ctx2 = sample_contexts(mab, rng);
  for (long arm = 0; arm < 4; ++arm)
    REQUIRE(pull(mab, ctx2, arm, rng) == mab.biases(arm));
}

TEST_CASE("reward noise has the configured variance", "[envs]") {
  CounterRng irng(11);
  double sigma = std::sqrt(0.5);
  MixtureInstance inst = make_mixture(2, 2, 0.0, sigma, ContextLaw::standard_normal, irng);
  inst.theta_star.setZero();
  CounterRng rng(12);
  auto ctx = sample_contexts(inst, rng);
  long n = 100000;
  double sum = 0.0, sumsq = 0.0;
  for (long i = 0; i < n; ++i) {
    double r = pull(inst, ctx, 0, rng) - inst.biases(0);
    sum += r;
    sumsq += r * r;
  }
  double var = (sumsq - sum * sum / n) / (n - 1);
  REQUIRE(std::abs(var - 0.5) <= 0.05 * 0.5);
}

TEST_CASE("instant regret is the gap to the best arm mean", "[envs]") {
  MixtureInstance inst;
  inst.theta_star = Eigen::VectorXd::Zero(2);
  inst.biases = Eigen::VectorXd(2);
  inst.biases << 1.0, 0.25;
  inst.sigma = 0.0;
  std::vector<Eigen::VectorXd> ctx = {Eigen::VectorXd::Zero(2),
                                      Eigen::VectorXd::Zero(2)};
  REQUIRE(instant_regret(inst, ctx, 0) == 0.0);
  REQUIRE(instant_regret(inst, ctx, 1) == 0.75);
}

TEST_CASE("continuum regret has the extremal unit-ball geometry", "[envs]") {
  CounterRng irng(13);
  ContinuumInstance inst = make_continuum(6, 2, 0.3, 0.0, irng);
  ContinuumEnv env(inst, 99);
  Eigen::VectorXd best = inst.theta_star / inst.theta_star.norm();
  REQUIRE(env.instant_regret(best) <= 1e-12);
  REQUIRE(env.instant_regret(-best) ==
          Catch::Approx(2.0 * inst.theta_star.norm()).epsilon(1e-12));
  REQUIRE(inst.gamma == 0.3);
  REQUIRE(inst.support().size() == 2);
}

TEST_CASE("mixture env pairs draws at (round, arm) coordinates", "[envs]") {
  CounterRng irng(14);
  MixtureInstance inst = make_mixture(3, 3, 0.5, 0.4, ContextLaw::standard_normal, irng);
  MixtureEnv a(inst, 777), b(inst, 777);
  for (long t = 1; t <= 10; ++t) {
    auto ca = a.contexts(t);
    auto cb = b.contexts(t);
    for (long k = 0; k < 3; ++k) REQUIRE(ca[k] == cb[k]);
    // the same (t, arm) gives the same reward draw no matter the query order
    REQUIRE(a.reward(t, 2, ca) == b.reward(t, 2, cb));
    REQUIRE(a.reward(t, 0, ca) == b.reward(t, 0, cb));
  }
}

TEST_CASE("cumulative regret is the prefix sum of instant regrets", "[envs]") {
  CounterRng irng(15);
  MixtureInstance inst = make_mixture(2, 3, 0.2, 0.3, ContextLaw::standard_normal, irng);
  MixtureEnv env(inst, 5);
  std::vector<double> instants;
  alb::RegretTrace trace;
  for (long t = 1; t <= 50; ++t) {
    auto ctx = env.contexts(t);
    long arm = t % 3;
    auto obs = env.observe(t, arm, ctx);
    REQUIRE(obs.instant_regret >= 0.0);
    instants.push_back(obs.instant_regret);
    trace.record(obs.instant_regret);
  }
  double acc = 0.0;
  for (size_t i = 0; i < instants.size(); ++i) {
    acc += instants[i];
    REQUIRE(trace.cum_regret[i] == Catch::Approx(acc).epsilon(1e-12));
  }
}

TEST_CASE("nested features truncate consistently along the ladder", "[envs]") {
  CounterRng irng(16);
  NestedFiniteInstance inst =
      make_nested_finite({3, 6, 12}, 2, 4, 0.25, 1.5, 0.1, irng);
  REQUIRE(inst.theta_star.head(6).cwiseAbs().minCoeff() == 0.25);
  REQUIRE(inst.theta_star.tail(6).cwiseAbs().maxCoeff() == 0.0);
  FiniteEnv env(inst, 31);
  for (long t = 1; t <= 20; ++t) {
    for (long a = 0; a < 4; ++a) {
      Eigen::VectorXd full = env.feature(t, a);
      // the lower maps are exactly the prefixes of the full map
      REQUIRE(full.head(3) == env.feature(t, a).head(3));
      REQUIRE(full.head(6) == env.feature(t, a).head(6));
    }
  }
}
