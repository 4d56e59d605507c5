#ifndef ALB_POLICIES_SCHEDULE_HPP
#define ALB_POLICIES_SCHEDULE_HPP

#include <cmath>
#include <cstdint>

#include "alb/errors.hpp"

namespace alb {

inline constexpr double kDeltaFloor = 1e-12;        // keeps log(1/delta) finite
inline constexpr long long kLengthCap = 4000000000000000000LL;

namespace detail {
// base^index * value with saturation; epoch lengths past the cap are
// unreachable for any feasible horizon.
inline long long scaled_power(long long value, long long base, long index) {
  long long out = value;
  for (long i = 0; i < index; ++i) {
    if (out > kLengthCap / base) return kLengthCap;
    out *= base;
  }
  return out;
}
}  // namespace detail

// One epoch's bookkeeping. Norm mode fills (length, slack, bound); dimension
// mode fills (length, slack, threshold, explore_len).
struct EpochSchedule {
  long index = 1;
  long long length = 0;
  double slack = 0.0;
  double bound = 0.0;      // b_i, refined at runtime (norm mode)
  double threshold = 0.0;  // eps_i (dimension mode)
  long long explore_len = 0;
};

// Doubling epochs: T_{i+1} = 2 T_i, delta_{i+1} = delta_i / 2. 1-based index.
inline EpochSchedule norm_epoch(long index, long long first_length, double delta1) {
  if (index < 1) throw ContractViolation("norm_epoch: index starts at 1");
  EpochSchedule e;
  e.index = index;
  e.length = detail::scaled_power(first_length, 2, index - 1);
  e.slack = std::max(delta1 * std::pow(0.5, index - 1), kDeltaFloor);
  return e;
}

// Dimension-mode phases, 0-based: T_i = 25^i T0, eps_i = C^{-i},
// delta_i = delta / 2^i, exploration length 5^i * ceil(sqrt(T0)).
inline EpochSchedule dim_epoch(long index, long long t0, double delta,
                               double threshold_base = 2.0) {
  if (index < 0) throw ContractViolation("dim_epoch: index starts at 0");
  EpochSchedule e;
  e.index = index;
  e.length = detail::scaled_power(t0, 25, index);
  e.slack = std::max(delta * std::pow(0.5, index), kDeltaFloor);
  e.threshold = std::pow(threshold_base, -static_cast<double>(index));
  long long root = static_cast<long long>(std::ceil(std::sqrt(static_cast<double>(t0))));
  e.explore_len = detail::scaled_power(root, 5, index);
  return e;
}

}  // namespace alb

#endif  // ALB_POLICIES_SCHEDULE_HPP
