#include "npg/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "npg/rng.hpp"

namespace npg {

namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178;  // 0.5 * ln(2*pi)

struct GaussianParams {
  double mu;
  double sigma;
};

GaussianParams gaussian_natural(const ParamVector& theta) {
  if (theta.chart == Chart::natural) return {theta.values[0], theta.values[1]};
  return {theta.values[0], std::exp(theta.values[1])};
}

std::size_t category_index(const PolicyFamily& family, double x) {
  double floor_x = std::floor(x);
  if (!(floor_x == x) || x < 0.0 ||
      x >= static_cast<double>(family.dimension))
    throw std::invalid_argument("categorical action must be an index below the category count");
  return static_cast<std::size_t>(x);
}

double log_sum_exp(const Vec& z) {
  double m = *std::max_element(z.begin(), z.end());
  double s = 0.0;
  for (double v : z) s += std::exp(v - m);
  return m + std::log(s);
}

}  // namespace

PolicyFamily PolicyFamily::gaussian(Chart chart) {
  return PolicyFamily{FamilyKind::gaussian_diag, 2, chart};
}

PolicyFamily PolicyFamily::categorical(std::size_t categories) {
  if (categories < 2)
    throw std::invalid_argument("categorical family needs at least 2 categories");
  return PolicyFamily{FamilyKind::categorical_softmax, categories, Chart::natural};
}

void validate_theta(const PolicyFamily& family, const ParamVector& theta) {
  if (theta.chart != family.chart)
    throw std::invalid_argument("parameter chart does not match family chart");
  if (theta.values.size() != family.dimension)
    throw std::invalid_argument("parameter length does not match family dimension");
  if (!all_finite(theta.values))
    throw std::invalid_argument("parameters must be finite");
  if (family.kind == FamilyKind::gaussian_diag && family.chart == Chart::natural &&
      theta.values[1] <= 0.0)
    throw std::domain_error("sigma must be positive in the natural chart");
}

double log_prob(const PolicyFamily& family, const ParamVector& theta, double x) {
  validate_theta(family, theta);
  if (family.kind == FamilyKind::gaussian_diag) {
    auto [mu, sigma] = gaussian_natural(theta);
    double z = (x - mu) / sigma;
    return -kHalfLog2Pi - std::log(sigma) - 0.5 * z * z;
  }
  std::size_t k = category_index(family, x);
  return theta.values[k] - log_sum_exp(theta.values);
}

ParamVector score(const PolicyFamily& family, const ParamVector& theta, double x) {
  validate_theta(family, theta);
  if (family.kind == FamilyKind::gaussian_diag) {
    auto [mu, sigma] = gaussian_natural(theta);
    double d = x - mu;
    double s2 = sigma * sigma;
    double d_mu = d / s2;
    if (theta.chart == Chart::natural)
      return {{d_mu, (d * d - s2) / (s2 * sigma)}, theta.chart};
    return {{d_mu, d * d / s2 - 1.0}, theta.chart};
  }
  std::size_t k = category_index(family, x);
  Vec p = softmax_probs(theta.values);
  Vec g(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) g[i] = -p[i];
  g[k] += 1.0;
  return {g, theta.chart};
}

double sample(const PolicyFamily& family, const ParamVector& theta,
              std::mt19937_64& engine) {
  validate_theta(family, theta);
  if (family.kind == FamilyKind::gaussian_diag) {
    auto [mu, sigma] = gaussian_natural(theta);
    return std::normal_distribution<double>(mu, sigma)(engine);
  }
  Vec p = softmax_probs(theta.values);
  double u = std::uniform_real_distribution<double>(0.0, 1.0)(engine);
  double c = 0.0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    c += p[i];
    if (u < c) return static_cast<double>(i);
  }
  return static_cast<double>(p.size() - 1);
}

double sample(const PolicyFamily& family, const ParamVector& theta,
              std::uint64_t seed) {
  auto engine = make_engine(seed);
  return sample(family, theta, engine);
}

double kl_closed_form(const PolicyFamily& family, const ParamVector& theta_a,
                      const ParamVector& theta_b) {
  validate_theta(family, theta_a);
  validate_theta(family, theta_b);
  if (theta_a.chart != theta_b.chart)
    throw std::invalid_argument("KL requires both parameter vectors in the same chart");
  if (family.kind == FamilyKind::gaussian_diag) {
    auto [mu_a, sigma_a] = gaussian_natural(theta_a);
    auto [mu_b, sigma_b] = gaussian_natural(theta_b);
    double dm = mu_a - mu_b;
    return std::log(sigma_b / sigma_a) +
           (sigma_a * sigma_a + dm * dm) / (2.0 * sigma_b * sigma_b) - 0.5;
  }
  Vec p = softmax_probs(theta_a.values);
  double lse_a = log_sum_exp(theta_a.values);
  double lse_b = log_sum_exp(theta_b.values);
  double kl = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    kl += p[i] * ((theta_a.values[i] - lse_a) - (theta_b.values[i] - lse_b));
  return kl;
}

FisherEstimate fisher_analytic(const PolicyFamily& family, const ParamVector& theta) {
  validate_theta(family, theta);
  if (family.kind == FamilyKind::gaussian_diag) {
    auto [mu, sigma] = gaussian_natural(theta);
    (void)mu;
    Mat f(2);
    f(0, 0) = 1.0 / (sigma * sigma);
    // For (mu, log sigma) the sigma row rescales by sigma twice: 2/s^2 -> 2.
    f(1, 1) = theta.chart == Chart::natural ? 2.0 / (sigma * sigma) : 2.0;
    return FisherEstimate::make(std::move(f), FisherProvenance::analytic);
  }
  Vec p = softmax_probs(theta.values);
  Mat f(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j)
      f(i, j) = (i == j ? p[i] : 0.0) - p[i] * p[j];
  return FisherEstimate::make(std::move(f), FisherProvenance::analytic);
}

ParamVector reparameterize(const PolicyFamily& family, const ParamVector& theta,
                           Chart target) {
  validate_theta(family, theta);
  if (family.kind == FamilyKind::categorical_softmax) {
    if (target != Chart::natural)
      throw std::invalid_argument("categorical family only has the natural chart");
    return theta;
  }
  if (target == theta.chart) return theta;
  if (target == Chart::log_scale)
    return {{theta.values[0], std::log(theta.values[1])}, Chart::log_scale};
  return {{theta.values[0], std::exp(theta.values[1])}, Chart::natural};
}

Vec softmax_probs(const Vec& logits) {
  if (logits.empty()) throw std::invalid_argument("softmax of empty vector");
  double m = *std::max_element(logits.begin(), logits.end());
  Vec p(logits.size());
  double s = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    p[i] = std::exp(logits[i] - m);
    s += p[i];
  }
  for (double& v : p) v /= s;
  return p;
}

}  // namespace npg
