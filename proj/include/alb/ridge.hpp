#ifndef ALB_RIDGE_HPP
#define ALB_RIDGE_HPP

#include <Eigen/Dense>

#include "alb/errors.hpp"

namespace alb {

// Running normal-equation statistics for incremental regularized least
// squares: gram = lambda*I + sum x x^T, moment = sum y*x.
struct RidgeState {
  long dim = 0;
  Eigen::MatrixXd gram;
  Eigen::VectorXd moment;
  long count = 0;
  double lambda = 0.0;

  static RidgeState make(long dim, double lambda) {
    RidgeState s;
    s.dim = dim;
    s.lambda = lambda;
    s.gram = lambda * Eigen::MatrixXd::Identity(dim, dim);
    s.moment = Eigen::VectorXd::Zero(dim);
    return s;
  }
};

inline void ridge_update(RidgeState& state, const Eigen::VectorXd& x, double y) {
  if (x.size() != state.dim)
    throw ContractViolation("ridge_update: feature has length " +
                            std::to_string(x.size()) + ", state dimension is " +
                            std::to_string(state.dim));
  state.gram.selfadjointView<Eigen::Lower>().rankUpdate(x, 1.0);
  state.gram.triangularView<Eigen::StrictlyUpper>() =
      state.gram.transpose().triangularView<Eigen::StrictlyUpper>();
  state.moment.noalias() += y * x;
  ++state.count;
}

inline Eigen::VectorXd ridge_solve(const RidgeState& state) {
  if (state.lambda > 0.0) {
    // Positive definite by construction.
    return state.gram.ldlt().solve(state.moment);
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(state.gram);
  if (!lu.isInvertible())
    throw SingularMatrixError("ridge_solve: gram matrix is singular", lu.rank(),
                              state.dim);
  return lu.solve(state.moment);
}

}  // namespace alb

#endif  // ALB_RIDGE_HPP
