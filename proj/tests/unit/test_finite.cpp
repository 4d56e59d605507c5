#include <catch_amalgamated.hpp>
#include <cmath>

#include "alb/envs.hpp"
#include "alb/policies/alb_dim_finite.hpp"

using namespace alb;

TEST_CASE("feature_scale formula values", "[finite]") {
  // 4TK/delta = e gives tau * sqrt(2): T=1, K=1, delta = 4/e
  REQUIRE(feature_scale(1.0, 1, 1, 4.0 / std::exp(1.0)) ==
          Catch::Approx(std::sqrt(2.0)).epsilon(1e-12));
  REQUIRE(feature_scale(2.0, 1000, 10, 0.1) ==
          Catch::Approx(10.158432881538419).epsilon(1e-12));
  REQUIRE_THROWS_AS(feature_scale(0.0, 10, 2, 0.1), ContractViolation);
}

TEST_CASE("feature norms stay below the scaling with the promised tail mass",
          "[finite]") {
  // over 50 seeded universes, the fraction of T*K draws whose norm exceeds
  // b(delta) stays below delta/4
  double tau = 1.5, delta = 0.1;
  long T = 200, K = 5;
  double bound = feature_scale(tau, T, K, delta);
  long exceed = 0, total = 0;
  for (long u = 0; u < 50; ++u) {
    CounterRng irng(500 + u);
    NestedFiniteInstance inst = make_nested_finite({4, 8}, 1, K, 0.25, tau, 0.1, irng);
    FiniteEnv env(inst, 500 + u);
    for (long t = 1; t <= T; ++t)
      for (long a = 0; a < K; ++a) {
        ++total;
        if (env.feature(t, a).norm() >= bound) ++exceed;
      }
  }
  REQUIRE(static_cast<double>(exceed) / static_cast<double>(total) <= delta / 4.0);
}

TEST_CASE("ladder lookup picks the smallest covering dimension", "[finite]") {
  // active coordinates {0, 7} with ladder (4, 8, 16): d_{M_i} = 8
  std::vector<long> ladder = {4, 8, 16};
  REQUIRE(ladder_model_index(ladder, {0, 7}) == 2);
  REQUIRE(ladder[ladder_model_index(ladder, {0, 7}) - 1] == 8);
  // the all-ones start keeps the full model
  std::vector<int> all;
  for (int j = 0; j < 16; ++j) all.push_back(j);
  REQUIRE(ladder_model_index(ladder, all) == 3);
  REQUIRE(ladder_model_index(ladder, {}) == 1);
  REQUIRE(ladder_model_index(ladder, {3}) == 1);
  REQUIRE(ladder_model_index(ladder, {4}) == 2);
}

TEST_CASE("finite run records ladder snapshots and stays deterministic",
          "[finite]") {
  CounterRng irng(41);
  NestedFiniteInstance inst = make_nested_finite({3, 6}, 1, 4, 0.3, 2.0, 0.2, irng);
  FiniteEnv env(inst, 202);
  AlbDimFiniteOptions opt;
  opt.t0 = 9;
  opt.delta = 0.1;
  long horizon = (9 + 3) + (225 + 15) + 30;
  RegretTrace a = alb_dim_finite_run(env, opt, horizon, 202);
  RegretTrace b = alb_dim_finite_run(env, opt, horizon, 202);
  REQUIRE(a.cum_regret == b.cum_regret);
  REQUIRE(a.snapshots.size() == 3);
  REQUIRE(a.snapshots[0].kind == SnapshotKind::ladder);
  REQUIRE(a.snapshots[0].value == 2.0);  // all-ones start: full model
  for (long i = 1; i < a.rounds(); ++i)
    REQUIRE(a.cum_regret[i] >= a.cum_regret[i - 1] - 1e-12);
}

TEST_CASE("ladder fast path reproduces the full run's model indices", "[finite]") {
  CounterRng irng(42);
  NestedFiniteInstance inst = make_nested_finite({3, 6, 9}, 2, 5, 0.3, 2.0, 0.3, irng);
  FiniteEnv env(inst, 303);
  AlbDimFiniteOptions opt;
  opt.t0 = 4;
  opt.delta = 0.1;
  long horizon = (4 + 2) + (100 + 10) + (2500 + 50) + (62500 + 250) + 1;
  RegretTrace full = alb_dim_finite_run(env, opt, horizon, 303);
  std::vector<long> fast = alb_dim_finite_ladder_trace(env, opt, 4, 303);
  REQUIRE(full.snapshots.size() == 5);
  for (size_t i = 0; i < 5; ++i)
    REQUIRE(fast[i] == static_cast<long>(full.snapshots[i].value));
}

TEST_CASE("fixed-model runs ignore the refit estimate", "[finite]") {
  CounterRng irng(43);
  NestedFiniteInstance inst = make_nested_finite({3, 6}, 1, 4, 0.3, 2.0, 0.2, irng);
  FiniteEnv env(inst, 404);
  AlbDimFiniteOptions opt;
  opt.t0 = 9;
  opt.delta = 0.1;
  opt.fixed_model = 2;
  RegretTrace full = alb_dim_finite_run(env, opt, 300, 404);
  for (const auto& snap : full.snapshots) REQUIRE(snap.value == 2.0);
  opt.fixed_model = 1;
  RegretTrace oracle = alb_dim_finite_run(env, opt, 300, 404);
  for (const auto& snap : oracle.snapshots) REQUIRE(snap.value == 1.0);
}
