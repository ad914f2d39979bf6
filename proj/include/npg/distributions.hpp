#pragma once

#include <cstdint>
#include <random>

#include "npg/fisher_estimate.hpp"
#include "npg/linalg.hpp"

namespace npg {

// Coordinate system on the family. The log-scale chart stores log(sigma)
// instead of sigma, so every real parameter vector is valid.
enum class Chart { natural, log_scale };

enum class FamilyKind { gaussian_diag, categorical_softmax };

// A parametric policy family over a single decision point: a 1-d Gaussian
// with theta = (mu, sigma) or (mu, log sigma), or a softmax categorical with
// theta = logits. All operations are pure and validate their inputs.
struct PolicyFamily {
  FamilyKind kind = FamilyKind::gaussian_diag;
  std::size_t dimension = 2;
  Chart chart = Chart::natural;

  static PolicyFamily gaussian(Chart chart = Chart::natural);
  static PolicyFamily categorical(std::size_t categories);
};

struct ParamVector {
  Vec values;
  Chart chart = Chart::natural;
};

// Throws std::invalid_argument on chart/length mismatch or non-finite
// entries, std::domain_error on sigma <= 0 in the natural chart.
void validate_theta(const PolicyFamily& family, const ParamVector& theta);

double log_prob(const PolicyFamily& family, const ParamVector& theta, double x);

// Gradient of log_prob with respect to theta, in theta's chart.
ParamVector score(const PolicyFamily& family, const ParamVector& theta, double x);

double sample(const PolicyFamily& family, const ParamVector& theta,
              std::mt19937_64& engine);
double sample(const PolicyFamily& family, const ParamVector& theta,
              std::uint64_t seed);

// D_KL(pi_a || pi_b), in nats. Chart-covariant: the value depends only on
// the distributions, not on the chart they are expressed in.
double kl_closed_form(const PolicyFamily& family, const ParamVector& theta_a,
                      const ParamVector& theta_b);

FisherEstimate fisher_analytic(const PolicyFamily& family, const ParamVector& theta);

// Same distribution expressed in the target chart. Round trip recovers the
// input within 1e-12.
ParamVector reparameterize(const PolicyFamily& family, const ParamVector& theta,
                           Chart target);

Vec softmax_probs(const Vec& logits);

}  // namespace npg
