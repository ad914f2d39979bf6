#include "npg/information_geometry.hpp"

#include <cmath>
#include <stdexcept>

#include "npg/rng.hpp"

namespace npg {

FisherEstimate FisherEstimate::make(Mat m, FisherProvenance provenance,
                                    std::size_t sample_count) {
  m.symmetrize();
  FisherEstimate est;
  est.matrix = std::move(m);
  est.provenance = provenance;
  est.sample_count = sample_count;
  est.damping = 0.0;
  return est;
}

FisherEstimate fisher_from_samples(const std::vector<ParamVector>& scores) {
  if (scores.empty())
    throw std::invalid_argument("fisher_from_samples: empty score list");
  const std::size_t n = scores.front().values.size();
  const Chart chart = scores.front().chart;
  Mat acc(n);
  for (const ParamVector& s : scores) {
    if (s.values.size() != n)
      throw std::invalid_argument("fisher_from_samples: mixed score lengths");
    if (s.chart != chart)
      throw std::invalid_argument("fisher_from_samples: mixed score charts");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) acc(i, j) += s.values[i] * s.values[j];
  }
  const double inv_n = 1.0 / static_cast<double>(scores.size());
  Mat f(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double v = acc(i, j) * inv_n;
      f(i, j) = v;
      f(j, i) = v;
    }
  return FisherEstimate::make(std::move(f), FisherProvenance::sampled, scores.size());
}

FisherEstimate kl_hessian_fd(const PolicyFamily& family, const ParamVector& theta,
                             double step) {
  validate_theta(family, theta);
  if (!(step > 0.0)) throw std::invalid_argument("kl_hessian_fd: step must be positive");
  if (family.kind == FamilyKind::gaussian_diag && family.chart == Chart::natural &&
      theta.values[1] <= 2.0 * step)
    throw std::domain_error("kl_hessian_fd: sigma too close to 0 for the chosen step");

  const std::size_t n = theta.values.size();
  auto kl_at = [&](const Vec& delta) {
    ParamVector shifted{axpy(1.0, delta, theta.values), theta.chart};
    return kl_closed_form(family, theta, shifted);
  };

  const double h = step;
  Mat hess(n);
  Vec delta(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    delta[i] = h;
    double plus = kl_at(delta);
    delta[i] = -h;
    double minus = kl_at(delta);
    delta[i] = 0.0;
    hess(i, i) = (plus + minus) / (h * h);  // kl_at(0) is exactly 0
    for (std::size_t j = i + 1; j < n; ++j) {
      delta[i] = h;
      delta[j] = h;
      double pp = kl_at(delta);
      delta[j] = -h;
      double pm = kl_at(delta);
      delta[i] = -h;
      double mm = kl_at(delta);
      delta[j] = h;
      double mp = kl_at(delta);
      delta[i] = 0.0;
      delta[j] = 0.0;
      double v = (pp - pm - mp + mm) / (4.0 * h * h);
      hess(i, j) = v;
      hess(j, i) = v;
    }
  }
  return FisherEstimate::make(std::move(hess), FisherProvenance::fd_hessian);
}

FisherEstimate damp(const FisherEstimate& estimate, double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("damp: lambda must be nonnegative");
  FisherEstimate out = estimate;
  out.matrix.add_diagonal(lambda);
  out.damping += lambda;
  return out;
}

double monte_carlo_kl(const PolicyFamily& family, const ParamVector& theta_a,
                      const ParamVector& theta_b, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("monte_carlo_kl: n must be positive");
  validate_theta(family, theta_a);
  validate_theta(family, theta_b);
  auto engine = make_engine(seed);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double x = sample(family, theta_a, engine);
    sum += log_prob(family, theta_a, x) - log_prob(family, theta_b, x);
  }
  return sum / static_cast<double>(n);
}

}  // namespace npg
