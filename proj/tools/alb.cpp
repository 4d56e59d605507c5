// Command-line front end: run seeded experiments from config files, evaluate
// the theoretical phase-length constants, cluster rating CSVs into pseudo-arm
// environments, and render trace CSVs as SVG plots.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "alb/confidence.hpp"
#include "alb/corpus.hpp"
#include "alb/harness/config.hpp"
#include "alb/harness/harness.hpp"
#include "alb/policies/alb_dim_finite.hpp"
#include "alb/svg.hpp"

namespace {

int cmd_run(const std::string& config_path, const std::string& out_dir, long threads) {
  alb::ExperimentConfig cfg = alb::ExperimentConfig::parse_file(config_path);
  alb::ExperimentResult result = alb::run_experiment(cfg, threads);
  alb::write_traces(result, out_dir);
  for (const auto& algo : result.algorithms) {
    alb::AggregateCurve curve = alb::aggregate(algo.trials);
    std::fprintf(stderr, "%-16s final mean regret %.6g +- %.6g over %ld trials\n",
                 algo.name.c_str(), curve.mean.back(), curve.stddev.back(),
                 cfg.trials);
  }
  return 0;
}

int cmd_t0(long d, double delta, double sigma, const std::string& mode, double tau,
           long long T, long K) {
  double lam = 1.0 / static_cast<double>(d);  // uniform-sphere exploration law
  double scale = 1.0;
  if (mode == "finite") {
    scale = alb::feature_scale(tau, T, K, delta);
  } else if (mode != "continuum") {
    throw alb::ConfigError("t0: mode must be 'continuum' or 'finite'");
  }
  long long t0 = alb::theoretical_t0(d, delta, sigma, lam, lam, scale);
  std::printf("%lld\n", t0);
  return 0;
}

int cmd_cluster(const std::string& csv_path, long k, const std::string& out_path,
                long reward_col, long row_limit, long col_limit, long max_iters,
                std::uint64_t seed, bool header) {
  alb::CounterRng rng(alb::derive_key(seed, {0xc1u}));
  auto rows = alb::ingest_csv(csv_path, reward_col, {}, row_limit, col_limit, rng, header);
  alb::ClusteredArms arms = alb::kmeans_cluster(rows, k, max_iters, rng);
  alb::write_arms_csv(arms, out_path);
  std::fprintf(stderr, "clustered %zu rows into %ld arms (d=%ld) -> %s\n", rows.size(),
               arms.K(), arms.centroids.front().size(), out_path.c_str());
  return 0;
}

int cmd_plot(const std::string& csv_path, const std::string& kind,
             const std::string& out_path) {
  if (kind == "regret") {
    alb::plot_regret_csv(csv_path, out_path);
  } else if (kind == "snapshot") {
    alb::plot_snapshot_csv(csv_path, out_path);
  } else {
    throw alb::ConfigError("plot: kind must be 'regret' or 'snapshot'");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adaptive linear bandit laboratory"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run an experiment config");
  std::string run_cfg, run_out = "out";
  long run_threads = 1;
  run->add_option("config", run_cfg, "experiment config file")->required();
  run->add_option("--out", run_out, "output directory");
  run->add_option("--threads", run_threads, "worker threads across trials");

  auto* t0 = app.add_subcommand("t0", "theoretical initial phase length");
  long t0_d = 2;
  double t0_delta = 0.1, t0_sigma = 0.0, t0_tau = 1.0;
  long long t0_T = 1000;
  long t0_K = 2;
  std::string t0_mode = "continuum";
  t0->add_option("--d", t0_d, "dimension")->required();
  t0->add_option("--delta", t0_delta, "slack")->required();
  t0->add_option("--sigma", t0_sigma, "noise scale")->required();
  t0->add_option("--mode", t0_mode, "continuum|finite");
  t0->add_option("--tau", t0_tau, "feature sub-Gaussian scale (finite)");
  t0->add_option("--T", t0_T, "horizon (finite)");
  t0->add_option("--K", t0_K, "arm count (finite)");

  auto* cluster = app.add_subcommand("cluster", "cluster a rating CSV into arms");
  std::string cl_csv, cl_out = "arms.csv";
  long cl_k = 8, cl_reward = 0, cl_rows = 0, cl_cols = 0, cl_iters = 100;
  std::uint64_t cl_seed = 1;
  bool cl_header = false;
  cluster->add_option("csv", cl_csv, "input CSV")->required();
  cluster->add_option("--k", cl_k, "cluster count")->required();
  cluster->add_option("--out", cl_out, "output arms.csv path");
  cluster->add_option("--reward-col", cl_reward, "rating column index");
  cluster->add_option("--row-limit", cl_rows, "subsample rows (0 = all)");
  cluster->add_option("--col-limit", cl_cols, "subsample feature columns (0 = all)");
  cluster->add_option("--max-iters", cl_iters, "Lloyd iteration cap");
  cluster->add_option("--seed", cl_seed, "subsampling / init seed");
  cluster->add_flag("--header", cl_header, "skip a header row");

  auto* plot = app.add_subcommand("plot", "render a trace CSV as SVG");
  std::string pl_csv, pl_kind = "regret", pl_out = "plot.svg";
  plot->add_option("csv", pl_csv, "regret.csv or snapshots.csv")->required();
  plot->add_option("--kind", pl_kind, "regret|snapshot");
  plot->add_option("--out", pl_out, "output SVG path")->required();

  try {
    app.parse(argc, argv);
    if (run->parsed()) return cmd_run(run_cfg, run_out, run_threads);
    if (t0->parsed()) return cmd_t0(t0_d, t0_delta, t0_sigma, t0_mode, t0_tau, t0_T, t0_K);
    if (cluster->parsed())
      return cmd_cluster(cl_csv, cl_k, cl_out, cl_reward, cl_rows, cl_cols, cl_iters,
                         cl_seed, cl_header);
    if (plot->parsed()) return cmd_plot(pl_csv, pl_kind, pl_out);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const alb::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::runtime_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 2;
  }
  return 2;
}
