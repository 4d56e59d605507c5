#ifndef ALB_TRACE_HPP
#define ALB_TRACE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace alb {

enum class SnapshotKind { norm_bound, support, ladder };

inline const char* snapshot_kind_name(SnapshotKind k) {
  switch (k) {
    case SnapshotKind::norm_bound: return "b";
    case SnapshotKind::support: return "support";
    case SnapshotKind::ladder: return "ladder";
  }
  return "?";
}

// Per-epoch refinement record: either a scalar (b_i, M_i) or an index set (D_i).
struct Snapshot {
  long epoch = 0;
  SnapshotKind kind = SnapshotKind::norm_bound;
  double value = 0.0;
  std::vector<int> indices;  // support kind only
};

// Per-round cumulative pseudo-regret plus the epoch refinement history of one
// (algorithm, trial) run.
struct RegretTrace {
  std::vector<double> cum_regret;
  std::vector<Snapshot> snapshots;
  std::uint64_t seed = 0;

  void record(double instant) {
    double prev = cum_regret.empty() ? 0.0 : cum_regret.back();
    cum_regret.push_back(prev + instant);
  }
  long rounds() const { return static_cast<long>(cum_regret.size()); }
  double final_regret() const { return cum_regret.empty() ? 0.0 : cum_regret.back(); }
};

}  // namespace alb

#endif  // ALB_TRACE_HPP
