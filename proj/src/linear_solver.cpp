#include "npg/linear_solver.hpp"

#include <cmath>
#include <stdexcept>

#include "npg/errors.hpp"

namespace npg {

namespace {

constexpr double kMaxAsymmetry = 1e-8;

double recomputed_residual(const MatVec& matvec, const Vec& x, const Vec& b) {
  return norm2(sub(matvec(x), b));
}

}  // namespace

SolveReport solve_spd(const Mat& matrix, const Vec& rhs) {
  const std::size_t n = matrix.size();
  if (rhs.size() != n) throw std::invalid_argument("solve_spd: dimension mismatch");
  if (matrix.asymmetry() > kMaxAsymmetry)
    throw std::invalid_argument("solve_spd: matrix is not symmetric");

  // Cholesky, lower triangular.
  Mat chol(n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = matrix(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= chol(j, k) * chol(j, k);
    if (!(d > 0.0)) throw SingularMatrixError(j);
    chol(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = matrix(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= chol(i, k) * chol(j, k);
      chol(i, j) = s / chol(j, j);
    }
  }

  Vec y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = rhs[i];
    for (std::size_t k = 0; k < i; ++k) s -= chol(i, k) * y[k];
    y[i] = s / chol(i, i);
  }
  Vec x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = y[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= chol(k, ii) * x[k];
    x[ii] = s / chol(ii, ii);
  }

  SolveReport report;
  report.solution = std::move(x);
  report.iterations = 0;
  report.method = SolveMethod::direct;
  report.residual_norm = norm2(sub(matrix.apply(report.solution), rhs));
  report.converged = true;
  return report;
}

SolveReport conjugate_gradient(const MatVec& matvec, const Vec& rhs, double tol,
                               std::size_t max_iter) {
  if (!(tol > 0.0)) throw std::invalid_argument("conjugate_gradient: tol must be positive");
  const std::size_t n = rhs.size();
  if (max_iter == 0) max_iter = 10 * n;

  SolveReport report;
  report.method = SolveMethod::cg;
  report.solution.assign(n, 0.0);

  const double rhs_norm = norm2(rhs);
  if (rhs_norm == 0.0) {
    report.residual_norm = 0.0;
    report.converged = true;
    return report;
  }
  const double target = tol * rhs_norm;

  Vec r = rhs;
  Vec p = r;
  double rs = dot(r, r);
  for (std::size_t it = 1; it <= max_iter; ++it) {
    Vec ap = matvec(p);
    if (ap.size() != n)
      throw std::invalid_argument("conjugate_gradient: matvec changed the dimension");
    double p_ap = dot(p, ap);
    if (!std::isfinite(p_ap))
      throw NumericalBreakdownError("conjugate gradient: NaN in curvature");
    if (p_ap <= 0.0)
      throw NumericalBreakdownError("conjugate gradient: non-positive curvature");
    double step = rs / p_ap;
    report.solution = axpy(step, p, report.solution);
    r = axpy(-step, ap, r);
    double rs_next = dot(r, r);
    if (!std::isfinite(rs_next))
      throw NumericalBreakdownError("conjugate gradient: NaN in residual");
    report.iterations = it;
    if (std::sqrt(rs_next) <= target) break;
    p = axpy(rs_next / rs, p, r);
    rs = rs_next;
  }

  report.residual_norm = recomputed_residual(matvec, report.solution, rhs);
  report.converged = report.residual_norm <= target;
  return report;
}

}  // namespace npg
