#pragma once

#include <cstddef>
#include <vector>

namespace npg {

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b);
double norm2(const Vec& a);
double norm_inf(const Vec& a);
bool all_finite(const Vec& a);

// a*x + y
Vec axpy(double a, const Vec& x, const Vec& y);
Vec scaled(const Vec& x, double a);
Vec sub(const Vec& a, const Vec& b);

// Dense square matrix, row-major. Everything here is desk-scale (dim <= a
// few hundred); solvers live in linear_solver.
class Mat {
 public:
  Mat() = default;
  explicit Mat(std::size_t n, double fill = 0.0) : n_(n), a_(n * n, fill) {}

  static Mat identity(std::size_t n);

  std::size_t size() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  Vec apply(const Vec& x) const;
  double max_abs() const;
  // max |a_ij - a_ji|
  double asymmetry() const;
  void symmetrize();
  void add_diagonal(double lambda);

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

// x x^T
Mat outer(const Vec& x);

}  // namespace npg
