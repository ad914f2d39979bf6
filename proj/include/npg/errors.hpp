#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace npg {

struct SingularMatrixError : std::runtime_error {
  explicit SingularMatrixError(std::size_t pivot_index)
      : std::runtime_error("matrix not positive definite at pivot " +
                           std::to_string(pivot_index)),
        pivot(pivot_index) {}
  std::size_t pivot;
};

struct NumericalBreakdownError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The quadratic form g.F^{-1}g is numerically null; the dynamic step size
// would diverge.
struct DegenerateGradientError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An update left the valid region of the parameter chart (sigma <= 0 in the
// natural chart).
struct ChartViolationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RuntimeAbortError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace npg
