#ifndef ALB_CORPUS_HPP
#define ALB_CORPUS_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cstdint>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "alb/envs.hpp"
#include "alb/errors.hpp"
#include "alb/rng.hpp"

namespace alb {

// One (rating, context) record of the real-data pipeline.
struct RatedRow {
  double reward = 0.0;
  Eigen::VectorXd features;
};

struct ClusteredArms {
  std::vector<Eigen::VectorXd> centroids;
  std::vector<double> arm_means;
  std::vector<long> assignment;  // row -> cluster

  long K() const { return static_cast<long>(centroids.size()); }
};

namespace detail {

inline bool trimmed_empty(const std::string& s) {
  return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

inline double parse_cell(const std::string& cell, long row, long col) {
  try {
    size_t pos = 0;
    double x = std::stod(cell, &pos);
    if (pos != cell.size()) throw std::invalid_argument(cell);
    return x;
  } catch (const std::exception&) {
    throw std::runtime_error("csv parse error at row " + std::to_string(row) +
                             ", column " + std::to_string(col) + ": '" + cell + "'");
  }
}

// Seeded k-of-n subset, returned sorted so retained order is the file order.
inline std::vector<long> sample_subset(long n, long k, CounterRng& rng) {
  std::vector<long> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (long j = 0; j < k; ++j) {
    long r = j + static_cast<long>(rng.next_index(static_cast<std::uint64_t>(n - j)));
    std::swap(idx[j], idx[r]);
  }
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace detail

// Reads (reward, features) rows from a CSV, subsampling rows and feature
// columns to the given limits with the supplied seed. A limit of 0 keeps
// everything. Retained rows keep their file order.
inline std::vector<RatedRow> ingest_csv(const std::string& path, long reward_col,
                                        std::vector<long> feature_cols, long row_limit,
                                        long col_limit, CounterRng& rng,
                                        bool has_header = false) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("csv: cannot open '" + path + "'");
  std::vector<std::vector<std::string>> cells;
  std::string line;
  long file_row = 0;
  while (std::getline(in, line)) {
    ++file_row;
    if (has_header && file_row == 1) continue;
    if (detail::trimmed_empty(line)) continue;
    std::vector<std::string> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(cell);
    cells.push_back(std::move(row));
  }
  if (cells.empty()) throw std::runtime_error("csv: '" + path + "' has no data rows");

  long ncols = static_cast<long>(cells.front().size());
  if (feature_cols.empty())
    for (long c = 0; c < ncols; ++c)
      if (c != reward_col) feature_cols.push_back(c);
  for (long c : feature_cols)
    if (c < 0 || c >= ncols)
      throw std::runtime_error("csv: feature column " + std::to_string(c) +
                               " out of range (file has " + std::to_string(ncols) +
                               " columns)");
  if (reward_col < 0 || reward_col >= ncols)
    throw std::runtime_error("csv: reward column " + std::to_string(reward_col) +
                             " out of range");

  long nrows = static_cast<long>(cells.size());
  std::vector<long> keep_rows(nrows);
  std::iota(keep_rows.begin(), keep_rows.end(), 0);
  if (row_limit > 0 && row_limit < nrows)
    keep_rows = detail::sample_subset(nrows, row_limit, rng);
  if (col_limit > 0 && col_limit < static_cast<long>(feature_cols.size())) {
    auto pick = detail::sample_subset(static_cast<long>(feature_cols.size()), col_limit, rng);
    std::vector<long> cols;
    for (long p : pick) cols.push_back(feature_cols[p]);
    feature_cols = cols;
  }

  std::vector<RatedRow> out;
  out.reserve(keep_rows.size());
  for (long r : keep_rows) {
    const auto& row = cells[r];
    if (static_cast<long>(row.size()) != ncols)
      throw std::runtime_error("csv: row " + std::to_string(r + 1) + " has " +
                               std::to_string(row.size()) + " cells, expected " +
                               std::to_string(ncols));
    RatedRow rec;
    rec.reward = detail::parse_cell(row[reward_col], r + 1, reward_col);
    rec.features.resize(static_cast<long>(feature_cols.size()));
    for (size_t j = 0; j < feature_cols.size(); ++j)
      rec.features(static_cast<long>(j)) =
          detail::parse_cell(row[feature_cols[j]], r + 1, feature_cols[j]);
    out.push_back(std::move(rec));
  }
  return out;
}

namespace detail {

inline long nearest_centroid(const Eigen::VectorXd& x,
                             const std::vector<Eigen::VectorXd>& centroids) {
  long best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (size_t c = 0; c < centroids.size(); ++c) {
    double dd = (x - centroids[c]).squaredNorm();
    if (dd < best_d) {
      best_d = dd;
      best = static_cast<long>(c);
    }
  }
  return best;
}

}  // namespace detail

inline double kmeans_distortion(const std::vector<RatedRow>& rows,
                                const ClusteredArms& arms) {
  double total = 0.0;
  for (size_t i = 0; i < rows.size(); ++i)
    total += (rows[i].features - arms.centroids[arms.assignment[i]]).squaredNorm();
  return total;
}

// k-means++ seeding followed by Lloyd iterations to an assignment fixpoint.
// Empty clusters are re-seeded from the point farthest from its centroid.
inline ClusteredArms kmeans_cluster(const std::vector<RatedRow>& rows, long k,
                                    long max_iters, CounterRng& rng) {
  long n = static_cast<long>(rows.size());
  if (k < 1 || k > n)
    throw ContractViolation("kmeans_cluster: need 1 <= k <= number of rows");
  ClusteredArms arms;
  arms.centroids.reserve(k);

  // k-means++ seeding
  arms.centroids.push_back(rows[rng.next_index(static_cast<std::uint64_t>(n))].features);
  std::vector<double> dist2(n);
  while (static_cast<long>(arms.centroids.size()) < k) {
    double total = 0.0;
    for (long i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& c : arms.centroids)
        best = std::min(best, (rows[i].features - c).squaredNorm());
      dist2[i] = best;
      total += best;
    }
    long chosen = 0;
    if (total > 0.0) {
      double target = rng.next_unit() * total;
      double acc = 0.0;
      for (long i = 0; i < n; ++i) {
        acc += dist2[i];
        if (acc >= target) {
          chosen = i;
          break;
        }
      }
    } else {
      chosen = static_cast<long>(rng.next_index(static_cast<std::uint64_t>(n)));
    }
    arms.centroids.push_back(rows[chosen].features);
  }

  // Lloyd iterations
  arms.assignment.assign(n, -1);
  for (long iter = 0; iter < max_iters; ++iter) {
    bool changed = false;
    for (long i = 0; i < n; ++i) {
      long c = detail::nearest_centroid(rows[i].features, arms.centroids);
      if (c != arms.assignment[i]) {
        arms.assignment[i] = c;
        changed = true;
      }
    }
    if (!changed) break;
    std::vector<Eigen::VectorXd> sums(k, Eigen::VectorXd::Zero(rows[0].features.size()));
    std::vector<long> counts(k, 0);
    for (long i = 0; i < n; ++i) {
      sums[arms.assignment[i]] += rows[i].features;
      counts[arms.assignment[i]] += 1;
    }
    for (long c = 0; c < k; ++c) {
      if (counts[c] > 0) {
        arms.centroids[c] = sums[c] / static_cast<double>(counts[c]);
      } else {
        // farthest point from its own centroid becomes the new seed
        long far_i = 0;
        double far_d = -1.0;
        for (long i = 0; i < n; ++i) {
          double dd =
              (rows[i].features - arms.centroids[arms.assignment[i]]).squaredNorm();
          if (dd > far_d) {
            far_d = dd;
            far_i = i;
          }
        }
        arms.centroids[c] = rows[far_i].features;
      }
    }
  }
  for (long i = 0; i < n; ++i)
    arms.assignment[i] = detail::nearest_centroid(rows[i].features, arms.centroids);

  // Drop empty clusters so every returned arm has a rating mean.
  std::vector<long> counts(k, 0);
  std::vector<double> sums(k, 0.0);
  for (long i = 0; i < n; ++i) {
    counts[arms.assignment[i]] += 1;
    sums[arms.assignment[i]] += rows[i].reward;
  }
  std::vector<long> remap(k, -1);
  ClusteredArms packed;
  for (long c = 0; c < k; ++c) {
    if (counts[c] == 0) continue;
    remap[c] = packed.K();
    packed.centroids.push_back(arms.centroids[c]);
    packed.arm_means.push_back(sums[c] / static_cast<double>(counts[c]));
  }
  packed.assignment.resize(n);
  for (long i = 0; i < n; ++i) packed.assignment[i] = remap[arms.assignment[i]];
  return packed;
}

// Clustered arms exposed as a bandit world: contexts are the fixed centroids,
// rewards are cluster rating means plus Gaussian noise. rho_min comes from
// the centroid second-moment matrix, floored at 1e-6.
class FixedArmsEnv {
 public:
  FixedArmsEnv(std::vector<Eigen::VectorXd> centroids, std::vector<double> means,
               double sigma, std::uint64_t trial_seed)
      : centroids_(std::move(centroids)),
        means_(std::move(means)),
        sigma_(sigma),
        noise_key_(derive_key(trial_seed, {static_cast<std::uint64_t>(Stream::noise)})) {
    long K = static_cast<long>(centroids_.size());
    long dd = centroids_.empty() ? 0 : centroids_.front().size();
    Eigen::MatrixXd second = Eigen::MatrixXd::Zero(dd, dd);
    for (const auto& c : centroids_) second += c * c.transpose();
    second /= static_cast<double>(K);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(second);
    rho_min_ = std::max(es.eigenvalues().minCoeff(), 1e-6);
    best_mean_ = *std::max_element(means_.begin(), means_.end());
  }

  long d() const { return centroids_.empty() ? 0 : centroids_.front().size(); }
  long K() const { return static_cast<long>(centroids_.size()); }
  double sigma() const { return sigma_; }
  double rho_min() const { return rho_min_; }

  std::vector<Eigen::VectorXd> contexts(long long) const { return centroids_; }

  RoundObservation observe(long long t, long arm,
                           const std::vector<Eigen::VectorXd>& ctx) const {
    CounterRng rng(derive_key(noise_key_, {static_cast<std::uint64_t>(t),
                                           static_cast<std::uint64_t>(arm)}));
    RoundObservation obs;
    obs.contexts = ctx;
    obs.chosen = arm;
    obs.reward = means_[arm] + sigma_ * rng.next_gaussian();
    obs.instant_regret = best_mean_ - means_[arm];
    return obs;
  }

 private:
  std::vector<Eigen::VectorXd> centroids_;
  std::vector<double> means_;
  double sigma_;
  double rho_min_ = 1e-6;
  double best_mean_ = 0.0;
  std::uint64_t noise_key_;
};

// arms.csv schema: arm,mean_reward,centroid_0,...,centroid_{d-1}
inline void write_arms_csv(const ClusteredArms& arms, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  long dd = arms.centroids.empty() ? 0 : arms.centroids.front().size();
  out << "arm,mean_reward";
  for (long j = 0; j < dd; ++j) out << ",centroid_" << j;
  out << "\n";
  char buf[40];
  for (long a = 0; a < arms.K(); ++a) {
    out << a;
    std::snprintf(buf, sizeof(buf), "%.10g", arms.arm_means[a]);
    out << "," << buf;
    for (long j = 0; j < dd; ++j) {
      std::snprintf(buf, sizeof(buf), "%.10g", arms.centroids[a](j));
      out << "," << buf;
    }
    out << "\n";
  }
}

inline ClusteredArms read_arms_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("arms csv '" + path + "' is empty");
  ClusteredArms arms;
  long row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() < 3)
      throw std::runtime_error("arms csv row " + std::to_string(row) + " too short");
    arms.arm_means.push_back(detail::parse_cell(cells[1], row, 1));
    Eigen::VectorXd c(static_cast<long>(cells.size()) - 2);
    for (size_t j = 2; j < cells.size(); ++j)
      c(static_cast<long>(j) - 2) = detail::parse_cell(cells[j], row, static_cast<long>(j));
    arms.centroids.push_back(c);
  }
  if (arms.centroids.empty())
    throw std::runtime_error("arms csv '" + path + "' has no arms");
  return arms;
}

}  // namespace alb

#endif  // ALB_CORPUS_HPP
