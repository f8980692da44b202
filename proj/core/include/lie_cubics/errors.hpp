#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lie_cubics {

/// Base class for all lie_cubics exceptions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A matrix failed the rotation-matrix invariants (orthogonality, det +1).
class InvalidGroupElement : public Error {
 public:
  using Error::Error;
};

/// An implicit solve did not reach the requested tolerance. Usually means
/// the time step is too large for the fixed-point map to contract.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, double residual, int iterations)
      : Error(what), residual(residual), iterations(iterations) {}

  double residual = 0.0;
  int iterations = 0;
  /// Index of the failing step when thrown from a trajectory run; -1 for a
  /// single step.
  std::ptrdiff_t step_index = -1;
};

/// Backtracking exhausted its halving budget without satisfying the
/// sufficient-decrease condition.
class LineSearchFailure : public Error {
 public:
  LineSearchFailure(const std::string& what, int iteration, int halvings)
      : Error(what), iteration(iteration), halvings(halvings) {}

  int iteration = 0;
  int halvings = 0;
};

/// A container did not have the size implied by the problem dimensions.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A trajectory is too short for the requested stencil.
class TooShort : public Error {
 public:
  using Error::Error;
};

}  // namespace lie_cubics
