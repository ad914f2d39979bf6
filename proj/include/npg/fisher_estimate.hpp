#pragma once

#include <cstddef>

#include "npg/linalg.hpp"

namespace npg {

enum class FisherProvenance { analytic, sampled, fd_hessian };

// Symmetric PSD curvature estimate. The matrix is symmetrized on
// construction; `damping` tracks the total lambda*I added so far.
struct FisherEstimate {
  Mat matrix;
  FisherProvenance provenance = FisherProvenance::analytic;
  std::size_t sample_count = 0;
  double damping = 0.0;

  static FisherEstimate make(Mat m, FisherProvenance provenance,
                             std::size_t sample_count = 0);

  std::size_t dimension() const { return matrix.size(); }
};

}  // namespace npg
