#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace dcloc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::ptrdiff_t expected, std::ptrdiff_t actual)
      : Error("dimension mismatch: expected " + std::to_string(expected) +
              ", got " + std::to_string(actual)) {}
};

class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

class NotInConstraint : public Error {
 public:
  NotInConstraint() : Error("start point is not in the constraint set") {}
};

// Raised by the Weiszfeld map when an iterate sits on attraction set `index`,
// where the map divides by zero.
class OnTargetSet : public Error {
 public:
  OnTargetSet(std::size_t index, Eigen::VectorXd at)
      : Error("iterate lies on attraction set " + std::to_string(index)),
        index(index),
        at(std::move(at)) {}

  std::size_t index;
  Eigen::VectorXd at;
};

class UnboundedDomain : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class EmptyIntersection : public Error {
 public:
  using Error::Error;
};

}  // namespace dcloc
