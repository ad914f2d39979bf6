#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "npg/errors.hpp"
#include "npg/linear_solver.hpp"
#include "npg/rng.hpp"
#include "test_util.hpp"

using namespace npg;

TEST_SUITE_BEGIN("linear_solver");

namespace {

Mat diag2(double a, double b) {
  Mat m(2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

// A = B^T B + I, a seeded SPD test matrix.
Mat random_spd(std::size_t n, std::uint64_t seed) {
  auto eng = make_engine(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Mat b(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b(i, j) = normal(eng);
  Mat a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += b(k, i) * b(k, j);
      a(i, j) = s + (i == j ? 1.0 : 0.0);
    }
  return a;
}

Vec random_vec(std::size_t n, std::uint64_t seed) {
  auto eng = make_engine(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vec v(n);
  for (double& x : v) x = normal(eng);
  return v;
}

MatVec as_matvec(const Mat& m) {
  return [&m](const Vec& v) { return m.apply(v); };
}

}  // namespace

TEST_CASE("solve_spd on easy systems") {
  SolveReport r = solve_spd(Mat::identity(2), {3.0, 4.0});
  CHECK(r.solution[0] == 3.0);
  CHECK(r.solution[1] == 4.0);
  CHECK(r.method == SolveMethod::direct);

  r = solve_spd(diag2(4.0, 1.0), {4.0, 1.0});
  CHECK(r.solution[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.solution[1] == doctest::Approx(1.0).epsilon(1e-12));

  Mat m(2);
  m(0, 0) = 2.0;
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  m(1, 1) = 2.0;
  r = solve_spd(m, {3.0, 3.0});
  CHECK(r.solution[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.solution[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.residual_norm <= 1e-10 * norm2(Vec{3.0, 3.0}));
}

TEST_CASE("solve_spd reports the failing pivot") {
  Mat m(2);
  m(0, 0) = 1.0;  // second diagonal entry is zero
  try {
    solve_spd(m, {1.0, 1.0});
    FAIL("expected SingularMatrixError");
  } catch (const SingularMatrixError& e) {
    CHECK(e.pivot == 1);
  }
}

TEST_CASE("solve_spd rejects asymmetric input") {
  Mat m(2);
  m(0, 0) = 1.0;
  m(1, 1) = 1.0;
  m(0, 1) = 1e-6;
  CHECK_THROWS_AS(solve_spd(m, {1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(solve_spd(Mat::identity(2), {1.0, 1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("cg solves the identity in one iteration") {
  SolveReport r = conjugate_gradient(as_matvec(Mat::identity(2)), {5.0, -2.0}, 1e-8);
  CHECK(r.iterations == 1);
  CHECK(r.converged);
  CHECK(r.solution[0] == 5.0);
  CHECK(r.solution[1] == -2.0);
  CHECK(r.method == SolveMethod::cg);
}

TEST_CASE("cg converges in at most the eigenvalue count") {
  Mat m = diag2(4.0, 1.0);
  SolveReport r = conjugate_gradient(as_matvec(m), {4.0, 1.0}, 1e-8);
  CHECK(r.iterations <= 2);
  CHECK(std::abs(r.solution[0] - 1.0) <= 1e-8);
  CHECK(std::abs(r.solution[1] - 1.0) <= 1e-8);

  // k distinct eigenvalues -> convergence to 1e-10 within k+1 iterations
  for (std::size_t k : {1u, 2u, 3u}) {
    Mat d(6);
    for (std::size_t i = 0; i < 6; ++i) d(i, i) = 1.0 + static_cast<double>(i % k);
    SolveReport rep = conjugate_gradient(as_matvec(d), random_vec(6, 70 + k), 1e-10);
    CHECK(rep.converged);
    CHECK(rep.iterations <= k + 1);
  }
}

TEST_CASE("cg handles a zero right-hand side") {
  SolveReport r = conjugate_gradient(as_matvec(Mat::identity(3)), {0.0, 0.0, 0.0});
  CHECK(r.iterations == 0);
  CHECK(r.converged);
  CHECK(norm2(r.solution) == 0.0);
}

TEST_CASE("cg returns the best iterate when the budget runs out") {
  Mat m = diag2(1.0, 1e6);
  SolveReport r = conjugate_gradient(as_matvec(m), {1.0, 1.0}, 1e-14, 1);
  CHECK(r.iterations == 1);
  CHECK_FALSE(r.converged);
  CHECK(r.residual_norm > 0.0);
}

TEST_CASE("cg flags numerical breakdown") {
  MatVec bad = [](const Vec& v) {
    return Vec(v.size(), std::numeric_limits<double>::quiet_NaN());
  };
  CHECK_THROWS_AS(conjugate_gradient(bad, {1.0, 1.0}), NumericalBreakdownError);

  MatVec negative = [](const Vec& v) { return scaled(v, -1.0); };
  CHECK_THROWS_AS(conjugate_gradient(negative, {1.0, 1.0}), NumericalBreakdownError);
}

TEST_CASE("cg agrees with the direct solve on seeded SPD systems") {
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    std::size_t n = 2 + trial % 49;  // dimensions 2..50
    Mat a = random_spd(n, 1000 + trial);
    Vec b = random_vec(n, 2000 + trial);
    SolveReport direct = solve_spd(a, b);
    SolveReport cg = conjugate_gradient(as_matvec(a), b, 1e-12);
    double rel = norm2(sub(cg.solution, direct.solution)) /
                 std::max(norm2(direct.solution), 1e-300);
    CHECK(rel <= 1e-6);
    // the reported residual is the recomputed one
    CHECK(std::abs(direct.residual_norm -
                   norm2(sub(a.apply(direct.solution), b))) <= 1e-10);
    CHECK(std::abs(cg.residual_norm - norm2(sub(a.apply(cg.solution), b))) <= 1e-10);
  }
}

TEST_SUITE_END();
