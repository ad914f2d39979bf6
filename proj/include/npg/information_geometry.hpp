#pragma once

#include <cstdint>
#include <vector>

#include "npg/distributions.hpp"
#include "npg/fisher_estimate.hpp"

namespace npg {

// (1/N) sum_i s_i s_i^T over score vectors, symmetrized. Reduction order is
// a fixed sequential sweep so results are reproducible.
FisherEstimate fisher_from_samples(const std::vector<ParamVector>& scores);

// Central second differences of d -> KL(pi_theta || pi_theta+d) at d = 0.
// Agrees with fisher_analytic to O(step^2); the default step balances
// truncation against cancellation for O(1) parameters.
FisherEstimate kl_hessian_fd(const PolicyFamily& family, const ParamVector& theta,
                             double step = 1e-4);

// matrix + lambda*I; the damping field accumulates.
FisherEstimate damp(const FisherEstimate& estimate, double lambda);

// Sample estimate of KL(pi_a || pi_b): mean of log_prob(a,x) - log_prob(b,x)
// over n draws x ~ pi_a. Deterministic given seed.
double monte_carlo_kl(const PolicyFamily& family, const ParamVector& theta_a,
                      const ParamVector& theta_b, std::size_t n, std::uint64_t seed);

}  // namespace npg
