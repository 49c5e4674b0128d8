#pragma once

#include <stdexcept>

namespace wrcw {

// A root finder or quadrature failed to converge within its iteration budget.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An adaptive series truncation would exceed the configured hard cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wrcw
