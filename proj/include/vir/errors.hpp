#pragma once

#include <stdexcept>
#include <string>

namespace vir {

/// Base class for every domain error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two operands live on different grids.
class GridMismatch : public Error {
 public:
  GridMismatch(int n1, int n2)
      : Error("grid mismatch: n=" + std::to_string(n1) + " vs n=" + std::to_string(n2)) {}
};

/// A kernel mode of a degenerate multiplier carries weight above tolerance,
/// so the momentum has no preimage under the inertia operator.
class KernelObstruction : public Error {
 public:
  KernelObstruction(int mode, double magnitude)
      : Error("kernel obstruction: mode " + std::to_string(mode) + " has magnitude " +
              std::to_string(magnitude)),
        mode_(mode),
        magnitude_(magnitude) {}
  int mode() const { return mode_; }
  double magnitude() const { return magnitude_; }

 private:
  int mode_;
  double magnitude_;
};

class NotReducible : public Error {
 public:
  using Error::Error;
};

/// Displacement fails 1 + p'(x) > 0 somewhere on the grid.
class NonMonotone : public Error {
 public:
  using Error::Error;
};

class InsufficientSamples : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace vir
