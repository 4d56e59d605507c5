#ifndef ALB_POLICIES_UCB1_HPP
#define ALB_POLICIES_UCB1_HPP

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "alb/errors.hpp"

namespace alb {

inline Eigen::VectorXd ucb1_indexes(const std::vector<double>& means,
                                    const std::vector<long>& counts, long t,
                                    double sigma) {
  if (means.size() != counts.size())
    throw ContractViolation("ucb1: means/counts size mismatch");
  Eigen::VectorXd idx(static_cast<long>(means.size()));
  for (size_t i = 0; i < means.size(); ++i) {
    if (counts[i] < 1)
      throw ContractViolation("ucb1_select: arm " + std::to_string(i) +
                              " has zero pulls");
    idx(static_cast<long>(i)) =
        means[i] + sigma * std::sqrt(2.0 * std::log(static_cast<double>(t)) /
                                     static_cast<double>(counts[i]));
  }
  return idx;
}

// Classical UCB baseline; ties break toward the lowest arm index.
inline long ucb1_select(const std::vector<double>& means,
                        const std::vector<long>& counts, long t, double sigma) {
  Eigen::VectorXd idx = ucb1_indexes(means, counts, t, sigma);
  long best = 0;
  for (long i = 1; i < idx.size(); ++i)
    if (idx(i) > idx(best)) best = i;
  return best;
}

}  // namespace alb

#endif  // ALB_POLICIES_UCB1_HPP
