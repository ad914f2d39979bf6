#pragma once

#include <cstddef>
#include <optional>
#include <utility>

#include "npg/distributions.hpp"
#include "npg/fisher_estimate.hpp"
#include "npg/linear_solver.hpp"

namespace npg {

enum class SolverChoice { automatic, direct, cg };

// One KL-budgeted update. predicted_kl equals epsilon by construction;
// realized_kl is filled when auditing. The step actually taken is
// alpha * shrink^backtrack_count * natural_gradient.
struct UpdateReport {
  ParamVector theta_old, theta_new;
  ParamVector gradient, natural_gradient;
  double alpha = 0.0;
  double epsilon = 0.0;
  double predicted_kl = 0.0;
  double quadratic_form = 0.0;  // g . F^{-1} g
  std::optional<double> realized_kl;
  std::size_t backtrack_count = 0;
  SolveReport solve;
};

// Solves F * d = g for the natural direction d; F^{-1} is never formed.
std::pair<ParamVector, SolveReport> natural_direction(
    const ParamVector& gradient, const FisherEstimate& fisher,
    SolverChoice choice = SolverChoice::automatic);

// alpha = sqrt(2*epsilon / (g . natural_gradient)). Throws
// DegenerateGradientError when the quadratic form is <= 1e-12.
double dynamic_step_size(const ParamVector& gradient,
                         const ParamVector& natural_gradient, double epsilon);

struct NpgOptions {
  bool audit = true;
  // Halve the step until realized KL <= backtrack_multiplier * epsilon.
  // Off by default: the dynamic step size alone is the plain scheme.
  bool backtrack = false;
  std::size_t max_backtracks = 10;
  double backtrack_multiplier = 1.5;
  double shrink = 0.5;
  SolverChoice solver = SolverChoice::automatic;
};

UpdateReport npg_update(const PolicyFamily& family, const ParamVector& theta,
                        const ParamVector& gradient, const FisherEstimate& fisher,
                        double epsilon, const NpgOptions& options = {});

// theta + alpha * gradient, chart-preserving.
ParamVector vanilla_update(const PolicyFamily& family, const ParamVector& theta,
                           const ParamVector& gradient, double alpha);

struct DistanceDiagnostic {
  double euclidean = 0.0;
  double kl_ab = 0.0;
  double kl_ba = 0.0;
};

// Parameter-space distance next to both KL directions, for the
// equal-Euclidean / unequal-KL comparison.
DistanceDiagnostic euclidean_vs_kl_diagnostic(const PolicyFamily& family,
                                              const ParamVector& theta_a,
                                              const ParamVector& theta_b);

}  // namespace npg
