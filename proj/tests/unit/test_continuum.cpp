#include <catch_amalgamated.hpp>
#include <cmath>
#include <set>

#include "alb/envs.hpp"
#include "alb/policies/alb_dim.hpp"
#include "alb/policies/continuum_oful.hpp"

using namespace alb;

namespace {

// Env wrapper that records every played arm, for the active-set confinement
// check.
class RecordingEnv {
 public:
  RecordingEnv(const ContinuumEnv& env) : env_(env) {}
  long d() const { return env_.d(); }
  double sigma() const { return env_.sigma(); }
  double reward(long long t, const Eigen::VectorXd& x) const {
    played_.push_back(x);
    return env_.reward(t, x);
  }
  double instant_regret(const Eigen::VectorXd& x) const {
    return env_.instant_regret(x);
  }
  const std::vector<Eigen::VectorXd>& played() const { return played_; }

 private:
  const ContinuumEnv& env_;
  mutable std::vector<Eigen::VectorXd> played_;
};

}  // namespace

TEST_CASE("zero-beta selection returns the greedy direction", "[continuum]") {
  RidgeState s = RidgeState::make(3, 1.0);
  Eigen::VectorXd e0(3);
  e0 << 1, 0, 0;
  ridge_update(s, e0, 5.0);  // theta_hat points along e0
  CounterRng rng(31);
  Eigen::VectorXd pick = oful_continuum_select(s, 0.0, 64, rng);
  Eigen::VectorXd theta = ridge_solve(s);
  REQUIRE((pick - theta / theta.norm()).norm() <= 1e-12);
}

TEST_CASE("isotropic gram keeps the greedy direction optimal", "[continuum]") {
  // gram = I: index = <x, theta> + beta ||x||, maximized on the sphere at the
  // theta direction.
  RidgeState s = RidgeState::make(2, 1.0);
  s.moment << 0.4, 0.0;  // theta_hat = (0.4, 0)
  CounterRng rng(32);
  Eigen::VectorXd pick = oful_continuum_select(s, 1.0, 256, rng);
  Eigen::VectorXd dir(2);
  dir << 1, 0;
  REQUIRE((pick - dir).norm() <= 1e-12);
}

TEST_CASE("candidate search tracks a dense angular grid oracle", "[continuum]") {
  RidgeState s = RidgeState::make(2, 1.0);
  s.gram << 4, 0, 0, 1;
  s.moment << 0.4, 0.0;  // theta_hat = (0.1, 0)
  double beta = 1.0;
  Eigen::VectorXd theta = ridge_solve(s);
  REQUIRE(theta(0) == Catch::Approx(0.1));

  auto index = [&](double angle) {
    Eigen::VectorXd x(2);
    x << std::cos(angle), std::sin(angle);
    return x.dot(theta) + beta * std::sqrt(x(0) * x(0) / 4.0 + x(1) * x(1));
  };
  double oracle = -1e300;
  long grid = 100000;
  for (long i = 0; i < grid; ++i)
    oracle = std::max(oracle, index(2.0 * M_PI * i / grid));

  CounterRng rng(33);
  Eigen::VectorXd pick = oful_continuum_select(s, beta, 512, rng);
  double got = pick.dot(theta) +
               beta * std::sqrt(pick(0) * pick(0) / 4.0 + pick(1) * pick(1));
  REQUIRE(got >= oracle * 0.98);
}

TEST_CASE("factorized learner equals the ridge-based selection index",
          "[continuum]") {
  CounterRng rng(34);
  long m = 5;
  ContinuumOful fast(m, 0.5, 0.1);
  RidgeState slow = RidgeState::make(m, 1.0);
  for (long t = 0; t < 40; ++t) {
    Eigen::VectorXd x = sample_uniform_sphere(m, rng);
    double r = rng.next_gaussian();
    fast.observe(x, r);
    ridge_update(slow, x, r);
    Eigen::VectorXd probe = sample_uniform_sphere(m, rng);
    Eigen::LDLT<Eigen::MatrixXd> ldlt(slow.gram);
    double slow_quad = probe.dot(ldlt.solve(probe));
    REQUIRE(fast.quad_form(probe) == Catch::Approx(slow_quad).epsilon(1e-9));
    REQUIRE((fast.theta_hat() - ridge_solve(slow)).norm() <= 1e-9);
  }
}

TEST_CASE("rank-1 cholesky update matches a fresh factorization", "[continuum]") {
  CounterRng rng(35);
  long m = 7;
  Eigen::MatrixXd L = Eigen::MatrixXd::Identity(m, m);
  Eigen::MatrixXd V = Eigen::MatrixXd::Identity(m, m);
  for (long t = 0; t < 30; ++t) {
    Eigen::VectorXd w(m);
    for (long j = 0; j < m; ++j) w(j) = rng.next_gaussian();
    alb::detail::chol_rank1_update(L, w);
    V += w * w.transpose();
    Eigen::MatrixXd fresh = Eigen::LLT<Eigen::MatrixXd>(V).matrixL();
    REQUIRE((L - fresh).cwiseAbs().maxCoeff() <= 1e-8);
  }
}

TEST_CASE("noiseless sparse recovery pins the active set from phase 2",
          "[alb_dim]") {
  // sigma = 0, 1-sparse theta* with gamma = 0.5: least squares is exact once
  // the exploration store has rank d, so D_i is the true singleton for i >= 2.
  CounterRng irng(36);
  ContinuumInstance inst = make_continuum(6, 1, 0.5, 0.0, irng);
  ContinuumEnv env(inst, 55);
  AlbDimOptions opt;
  opt.t0 = 100;
  opt.delta = 0.1;
  opt.candidates = 16;
  long horizon = 110 + 2550 + 10;  // into phase 2
  RegretTrace trace = alb_dim_run(env, opt, horizon, 55);
  REQUIRE(trace.snapshots.size() == 3);
  REQUIRE(trace.snapshots[0].indices.size() == 6);  // all-ones start: full support
  REQUIRE(trace.snapshots[2].indices == inst.support());
}

TEST_CASE("regret blocks play only inside the active set", "[alb_dim]") {
  CounterRng irng(37);
  ContinuumInstance inst = make_continuum(5, 2, 0.4, 0.3, irng);
  ContinuumEnv base(inst, 66);
  RecordingEnv env(base);
  AlbDimOptions opt;
  opt.t0 = 9;
  opt.delta = 0.1;
  opt.candidates = 8;
  long horizon = (9 + 3) + (225 + 15) + 50;
  RegretTrace trace = alb_dim_run(env, opt, horizon, 66);

  // reconstruct block boundaries from the schedule and check coordinates
  long pos = 0;
  for (size_t phase = 0; phase < trace.snapshots.size(); ++phase) {
    EpochSchedule sched = dim_epoch(static_cast<long>(phase), opt.t0, opt.delta);
    std::set<int> allowed(trace.snapshots[phase].indices.begin(),
                          trace.snapshots[phase].indices.end());
    for (long long s = 0; s < sched.length && pos < static_cast<long>(env.played().size());
         ++s, ++pos) {
      const Eigen::VectorXd& x = env.played()[pos];
      for (long j = 0; j < x.size(); ++j)
        if (!allowed.count(static_cast<int>(j))) REQUIRE(x(j) == 0.0);
    }
    pos += static_cast<long>(
        std::min<long long>(sched.explore_len,
                            static_cast<long long>(env.played().size()) - pos));
  }
}

TEST_CASE("support fast path reproduces the full run's active sets", "[alb_dim]") {
  CounterRng irng(38);
  ContinuumInstance inst = make_continuum(6, 2, 0.3, 0.4, irng);
  ContinuumEnv env(inst, 77);
  AlbDimOptions opt;
  opt.t0 = 4;
  opt.delta = 0.1;
  opt.candidates = 8;
  // horizon reaching the start of phase 4: phases 0..3 fully executed
  long horizon = (4 + 2) + (100 + 10) + (2500 + 50) + (62500 + 250) + 1;
  RegretTrace full = alb_dim_run(env, opt, horizon, 77);
  auto fast = alb_dim_support_trace(env, opt, 4, 77);
  REQUIRE(full.snapshots.size() == 5);
  for (size_t i = 0; i < 5; ++i) {
    REQUIRE(fast[i].indices == full.snapshots[i].indices);
  }
}

TEST_CASE("oracle and full-dimension runs share the environment stream",
          "[alb_dim]") {
  CounterRng irng(39);
  ContinuumInstance inst = make_continuum(8, 2, 0.3, 0.5, irng);
  ContinuumEnv env(inst, 88);
  RegretTrace oracle = dim_oracle_run(env, inst.support(), 0.1, 16, 400, 88);
  RegretTrace full = full_dim_oful_run(env, 0.1, 16, 400, 88);
  REQUIRE(oracle.rounds() == 400);
  REQUIRE(full.rounds() == 400);
  // both nondecreasing
  for (long i = 1; i < 400; ++i) {
    REQUIRE(oracle.cum_regret[i] >= oracle.cum_regret[i - 1] - 1e-12);
    REQUIRE(full.cum_regret[i] >= full.cum_regret[i - 1] - 1e-12);
  }
}
