#include "npg/natural_gradient.hpp"

#include <cmath>
#include <stdexcept>

#include "npg/errors.hpp"

namespace npg {

namespace {

// Above this, the dense factorization gives way to matrix-free CG.
constexpr std::size_t kDirectSolveMaxDim = 512;
constexpr double kDegenerateQuadraticForm = 1e-12;

bool chart_valid(const PolicyFamily& family, const ParamVector& theta) {
  return !(family.kind == FamilyKind::gaussian_diag &&
           family.chart == Chart::natural && theta.values[1] <= 0.0);
}

}  // namespace

std::pair<ParamVector, SolveReport> natural_direction(const ParamVector& gradient,
                                                      const FisherEstimate& fisher,
                                                      SolverChoice choice) {
  if (fisher.dimension() != gradient.values.size())
    throw std::invalid_argument("natural_direction: dimension mismatch");
  if (!all_finite(gradient.values))
    throw std::invalid_argument("natural_direction: gradient must be finite");

  if (choice == SolverChoice::automatic)
    choice = fisher.dimension() <= kDirectSolveMaxDim ? SolverChoice::direct
                                                      : SolverChoice::cg;
  SolveReport report =
      choice == SolverChoice::direct
          ? solve_spd(fisher.matrix, gradient.values)
          : conjugate_gradient(
                [&fisher](const Vec& v) { return fisher.matrix.apply(v); },
                gradient.values);
  ParamVector direction{report.solution, gradient.chart};
  return {std::move(direction), std::move(report)};
}

double dynamic_step_size(const ParamVector& gradient,
                         const ParamVector& natural_gradient, double epsilon) {
  if (!(epsilon > 0.0))
    throw std::invalid_argument("dynamic_step_size: epsilon must be positive");
  double q = dot(gradient.values, natural_gradient.values);
  if (!(q > kDegenerateQuadraticForm))
    throw DegenerateGradientError(
        "dynamic step size: quadratic form g.F^{-1}g is numerically null");
  return std::sqrt(2.0 * epsilon / q);
}

UpdateReport npg_update(const PolicyFamily& family, const ParamVector& theta,
                        const ParamVector& gradient, const FisherEstimate& fisher,
                        double epsilon, const NpgOptions& options) {
  validate_theta(family, theta);
  if (gradient.chart != family.chart)
    throw std::invalid_argument("npg_update: gradient chart does not match family");
  if (gradient.values.size() != family.dimension)
    throw std::invalid_argument("npg_update: gradient length does not match family");

  auto [direction, solve] = natural_direction(gradient, fisher, options.solver);
  double q = dot(gradient.values, direction.values);
  double alpha = dynamic_step_size(gradient, direction, epsilon);

  UpdateReport report;
  report.theta_old = theta;
  report.gradient = gradient;
  report.natural_gradient = direction;
  report.alpha = alpha;
  report.epsilon = epsilon;
  report.predicted_kl = epsilon;
  report.quadratic_form = q;
  report.solve = std::move(solve);

  const bool need_kl = options.audit || options.backtrack;
  double step = alpha;
  for (std::size_t k = 0;; ++k) {
    ParamVector candidate{axpy(step, direction.values, theta.values), theta.chart};
    if (!chart_valid(family, candidate)) {
      if (options.backtrack && k < options.max_backtracks) {
        step *= options.shrink;
        continue;
      }
      throw ChartViolationError("npg_update: step drives sigma non-positive");
    }
    double realized = need_kl ? kl_closed_form(family, theta, candidate) : 0.0;
    if (options.backtrack && realized > options.backtrack_multiplier * epsilon) {
      if (k >= options.max_backtracks)
        throw RuntimeAbortError("npg_update: backtracking failed to meet the KL budget");
      step *= options.shrink;
      continue;
    }
    report.theta_new = std::move(candidate);
    if (need_kl) report.realized_kl = realized;
    report.backtrack_count = k;
    break;
  }
  return report;
}

ParamVector vanilla_update(const PolicyFamily& family, const ParamVector& theta,
                           const ParamVector& gradient, double alpha) {
  if (!(alpha > 0.0))
    throw std::invalid_argument("vanilla_update: alpha must be positive");
  validate_theta(family, theta);
  if (gradient.chart != family.chart)
    throw std::invalid_argument("vanilla_update: gradient chart does not match family");
  if (gradient.values.size() != family.dimension)
    throw std::invalid_argument("vanilla_update: gradient length does not match family");
  if (!all_finite(gradient.values))
    throw std::invalid_argument("vanilla_update: gradient must be finite");
  ParamVector updated{axpy(alpha, gradient.values, theta.values), theta.chart};
  if (!chart_valid(family, updated))
    throw ChartViolationError("vanilla_update: step drives sigma non-positive");
  return updated;
}

DistanceDiagnostic euclidean_vs_kl_diagnostic(const PolicyFamily& family,
                                              const ParamVector& theta_a,
                                              const ParamVector& theta_b) {
  validate_theta(family, theta_a);
  validate_theta(family, theta_b);
  DistanceDiagnostic d;
  d.euclidean = norm2(sub(theta_a.values, theta_b.values));
  d.kl_ab = kl_closed_form(family, theta_a, theta_b);
  d.kl_ba = kl_closed_form(family, theta_b, theta_a);
  return d;
}

}  // namespace npg
