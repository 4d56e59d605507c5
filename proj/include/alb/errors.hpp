#ifndef ALB_ERRORS_HPP
#define ALB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace alb {

// Caller broke a documented precondition.
class ContractViolation : public std::logic_error {
 public:
  explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

// A linear system that must be solvable is rank deficient.
class SingularMatrixError : public std::runtime_error {
 public:
  SingularMatrixError(const std::string& what, long rank, long dim)
      : std::runtime_error(what + " (rank " + std::to_string(rank) + " of " +
                           std::to_string(dim) + ")"),
        rank_(rank),
        dim_(dim) {}
  long rank() const { return rank_; }
  long dim() const { return dim_; }

 private:
  long rank_;
  long dim_;
};

}  // namespace alb

#endif  // ALB_ERRORS_HPP
