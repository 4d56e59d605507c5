#ifndef ALB_HARNESS_HARNESS_HPP
#define ALB_HARNESS_HARNESS_HPP

#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "alb/corpus.hpp"
#include "alb/envs.hpp"
#include "alb/harness/config.hpp"
#include "alb/policies/alb_dim.hpp"
#include "alb/policies/alb_dim_finite.hpp"
#include "alb/policies/alb_norm.hpp"
#include "alb/rng.hpp"
#include "alb/trace.hpp"
#include "alb/version.hpp"

namespace alb {

struct AlgorithmTraces {
  std::string name;
  std::vector<RegretTrace> trials;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<AlgorithmTraces> algorithms;
  std::vector<std::uint64_t> trial_seeds;
  double wall_clock_sec = 0.0;
};

namespace detail {

inline CounterRng instance_rng(std::uint64_t trial_seed) {
  return CounterRng(
      derive_key(trial_seed, {static_cast<std::uint64_t>(Stream::instance)}));
}

// Runs one trial of every algorithm in the config's triple. Environments are
// regenerated per algorithm from the same trial seed, so context and noise
// draws pair exactly across algorithms.
inline void run_trial(const ExperimentConfig& cfg, long trial,
                      std::vector<AlgorithmTraces>& out) {
  std::uint64_t trial_seed = cfg.base_seed + static_cast<std::uint64_t>(trial);
  switch (cfg.kind) {
    case ExperimentKind::norm: {
      CounterRng irng = instance_rng(trial_seed);
      MixtureInstance inst = make_mixture(cfg.d, cfg.K, cfg.theta_norm, cfg.sigma,
                                          cfg.context_law, irng);
      MixtureEnv env(inst, trial_seed);
      AlbNormOptions opt{cfg.tau, cfg.first_epoch_len, cfg.delta1, cfg.delta_s, cfg.b1};
      out[0].trials[trial] = alb_norm_run(env, opt, cfg.horizon, trial_seed);
      out[1].trials[trial] = oful_plus_fixed_run(env, cfg.b1, cfg.tau, cfg.delta1,
                                                 cfg.delta_s, cfg.horizon, trial_seed);
      out[2].trials[trial] = norm_oracle_run(env, cfg.delta1, cfg.horizon, trial_seed);
      break;
    }
    case ExperimentKind::dim_continuum: {
      CounterRng irng = instance_rng(trial_seed);
      ContinuumInstance inst = make_continuum(cfg.d, cfg.d_star, cfg.gamma, cfg.sigma, irng);
      ContinuumEnv env(inst, trial_seed);
      AlbDimOptions opt{cfg.t0, cfg.delta, cfg.threshold_base, cfg.candidates};
      out[0].trials[trial] = alb_dim_run(env, opt, cfg.horizon, trial_seed);
      out[1].trials[trial] =
          full_dim_oful_run(env, cfg.delta, cfg.candidates, cfg.horizon, trial_seed);
      out[2].trials[trial] = dim_oracle_run(env, inst.support(), cfg.delta,
                                            cfg.candidates, cfg.horizon, trial_seed);
      break;
    }
    case ExperimentKind::dim_finite: {
      CounterRng irng = instance_rng(trial_seed);
      NestedFiniteInstance inst = make_nested_finite(
          cfg.ladder, cfg.m_star, cfg.K, cfg.gamma, cfg.feature_tau, cfg.sigma, irng);
      FiniteEnv env(inst, trial_seed);
      AlbDimFiniteOptions opt{cfg.t0, cfg.delta, cfg.threshold_base, std::nullopt};
      out[0].trials[trial] = alb_dim_finite_run(env, opt, cfg.horizon, trial_seed, 4);
      AlbDimFiniteOptions full = opt;
      full.fixed_model = inst.M();
      out[1].trials[trial] = alb_dim_finite_run(env, full, cfg.horizon, trial_seed, 5);
      AlbDimFiniteOptions oracle = opt;
      oracle.fixed_model = inst.m_star;
      out[2].trials[trial] = alb_dim_finite_run(env, oracle, cfg.horizon, trial_seed, 6);
      break;
    }
    case ExperimentKind::realdata: {
      ClusteredArms arms = read_arms_csv(cfg.arms_csv);
      FixedArmsEnv env(arms.centroids, arms.arm_means, cfg.sigma, trial_seed);
      AlbNormOptions opt{cfg.tau, cfg.first_epoch_len, cfg.delta1, cfg.delta_s, cfg.b1};
      out[0].trials[trial] = alb_norm_run(env, opt, cfg.horizon, trial_seed);
      out[1].trials[trial] = oful_plus_fixed_run(env, cfg.b1, cfg.tau, cfg.delta1,
                                                 cfg.delta_s, cfg.horizon, trial_seed);
      out[2].trials[trial] = ucb1_run(env, cfg.horizon, trial_seed);
      break;
    }
  }
}

inline std::vector<std::string> algorithm_names(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::norm: return {"alb_norm", "oful_plus", "oracle"};
    case ExperimentKind::dim_continuum: return {"alb_dim", "oful", "oracle"};
    case ExperimentKind::dim_finite: return {"alb_dim_finite", "full_ladder", "oracle"};
    case ExperimentKind::realdata: return {"alb_norm", "oful_plus", "ucb1"};
  }
  return {};
}

}  // namespace detail

// Executes the configured triple over all trials. Trials are independent
// pure functions of (config, trial seed); the thread count changes scheduling
// only, never output.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg, long threads = 1) {
  cfg.validate();
  auto start = std::chrono::steady_clock::now();
  ExperimentResult result;
  result.config = cfg;
  for (const auto& name : detail::algorithm_names(cfg.kind)) {
    AlgorithmTraces at;
    at.name = name;
    at.trials.resize(cfg.trials);
    result.algorithms.push_back(std::move(at));
  }
  for (long trial = 0; trial < cfg.trials; ++trial)
    result.trial_seeds.push_back(cfg.base_seed + static_cast<std::uint64_t>(trial));

  if (threads <= 1 || cfg.trials == 1) {
    for (long trial = 0; trial < cfg.trials; ++trial)
      detail::run_trial(cfg, trial, result.algorithms);
  } else {
    std::atomic<long> next{0};
    auto worker = [&]() {
      for (;;) {
        long trial = next.fetch_add(1);
        if (trial >= cfg.trials) return;
        detail::run_trial(cfg, trial, result.algorithms);
      }
    };
    std::vector<std::thread> pool;
    long n = std::min<long>(threads, cfg.trials);
    for (long i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  result.wall_clock_sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

struct AggregateCurve {
  std::vector<double> mean;
  std::vector<double> stddev;
};

// Pointwise mean and sample standard deviation across trials.
inline AggregateCurve aggregate(const std::vector<RegretTrace>& traces) {
  if (traces.empty()) throw ContractViolation("aggregate: no traces");
  size_t len = traces.front().cum_regret.size();
  for (const auto& tr : traces)
    if (tr.cum_regret.size() != len)
      throw ContractViolation("aggregate: traces have mismatched lengths");
  AggregateCurve out;
  out.mean.assign(len, 0.0);
  out.stddev.assign(len, 0.0);
  double n = static_cast<double>(traces.size());
  for (size_t i = 0; i < len; ++i) {
    double s = 0.0;
    for (const auto& tr : traces) s += tr.cum_regret[i];
    double m = s / n;
    out.mean[i] = m;
    if (traces.size() > 1) {
      double sq = 0.0;
      for (const auto& tr : traces) {
        double dv = tr.cum_regret[i] - m;
        sq += dv * dv;
      }
      out.stddev[i] = std::sqrt(sq / (n - 1.0));
    }
  }
  return out;
}

namespace detail {

inline std::string fmt10(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}

inline std::string snapshot_value(const Snapshot& s) {
  if (s.kind == SnapshotKind::support) {
    std::string out;
    for (size_t i = 0; i < s.indices.size(); ++i) {
      if (i) out += '|';
      out += std::to_string(s.indices[i]);
    }
    return out;
  }
  return fmt10(s.value);
}

}  // namespace detail

// regret.csv: round,algorithm,trial,cum_regret (round 1-based)
// snapshots.csv: epoch,algorithm,trial,kind,value (support joined by '|')
// manifest.json: config echo, seeds, wall clock, artifact version
inline void write_traces(const ExperimentResult& result, const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec)
    throw std::runtime_error("cannot create output directory '" + out_dir +
                             "': " + ec.message());

  {
    std::ofstream out(out_dir + "/regret.csv");
    if (!out) throw std::runtime_error("cannot write '" + out_dir + "/regret.csv'");
    out << "round,algorithm,trial,cum_regret\n";
    for (const auto& algo : result.algorithms)
      for (size_t trial = 0; trial < algo.trials.size(); ++trial) {
        const auto& cum = algo.trials[trial].cum_regret;
        for (size_t r = 0; r < cum.size(); ++r)
          out << (r + 1) << ',' << algo.name << ',' << trial << ','
              << detail::fmt10(cum[r]) << '\n';
      }
  }
  {
    std::ofstream out(out_dir + "/snapshots.csv");
    if (!out) throw std::runtime_error("cannot write '" + out_dir + "/snapshots.csv'");
    out << "epoch,algorithm,trial,kind,value\n";
    for (const auto& algo : result.algorithms)
      for (size_t trial = 0; trial < algo.trials.size(); ++trial)
        for (const auto& snap : algo.trials[trial].snapshots)
          out << snap.epoch << ',' << algo.name << ',' << trial << ','
              << snapshot_kind_name(snap.kind) << ',' << detail::snapshot_value(snap)
              << '\n';
  }
  {
    nlohmann::json manifest;
    manifest["artifact_version"] = kVersion;
    manifest["base_seed"] = result.config.base_seed;
    manifest["trial_seeds"] = result.trial_seeds;
    manifest["wall_clock_sec"] = result.wall_clock_sec;
    manifest["config"] = result.config.serialize();
    std::ofstream out(out_dir + "/manifest.json");
    if (!out) throw std::runtime_error("cannot write '" + out_dir + "/manifest.json'");
    out << manifest.dump(2) << "\n";
  }
}

}  // namespace alb

#endif  // ALB_HARNESS_HARNESS_HPP
