#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace convexpmf {

class NotConvexError : public std::invalid_argument {
 public:
  NotConvexError(std::size_t index, const std::string& what)
      : std::invalid_argument(what), index_(index) {}

  /// First index i with f(i-1) - 2 f(i) + f(i+1) < 0.
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// Numerical failure inside a solver: iteration caps, singular systems.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace convexpmf
