#pragma once

#include <cstddef>
#include <functional>

#include "npg/linalg.hpp"

namespace npg {

enum class SolveMethod { direct, cg };

struct SolveReport {
  Vec solution;
  std::size_t iterations = 0;
  // ||A x - b||_2, recomputed from the returned iterate.
  double residual_norm = 0.0;
  SolveMethod method = SolveMethod::direct;
  bool converged = true;
};

// Cholesky solve. Rejects inputs with asymmetry > 1e-8 and throws
// SingularMatrixError naming the pivot index when factorization breaks down.
SolveReport solve_spd(const Mat& matrix, const Vec& rhs);

using MatVec = std::function<Vec(const Vec&)>;

// Plain conjugate gradient (no preconditioner). Stops when the residual
// drops to tol*||rhs||; max_iter = 0 means 10 * dimension. On iteration
// budget exhaustion the best iterate is returned with converged = false.
SolveReport conjugate_gradient(const MatVec& matvec, const Vec& rhs,
                               double tol = 1e-10, std::size_t max_iter = 0);

}  // namespace npg
