#include <cmath>
#include <sstream>

#include "npg/experiment.hpp"
#include "npg/information_geometry.hpp"
#include "npg/natural_gradient.hpp"
#include "npg/rng.hpp"

namespace npg {

namespace {

double max_entry_deviation(const Mat& a, const Mat& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

DiagnosticCheck figure2_check() {
  PolicyFamily fam = PolicyFamily::gaussian();
  auto narrow = euclidean_vs_kl_diagnostic(fam, {{0.0, 0.3}}, {{1.0, 0.3}});
  auto wide = euclidean_vs_kl_diagnostic(fam, {{0.0, 3.0}}, {{1.0, 3.0}});
  double ratio = narrow.kl_ab / wide.kl_ab;
  bool pass = std::abs(narrow.euclidean - 1.0) <= 1e-12 &&
              std::abs(wide.euclidean - 1.0) <= 1e-12 &&
              std::abs(narrow.kl_ab - 50.0 / 9.0) <= 1e-9 &&
              std::abs(wide.kl_ab - 1.0 / 18.0) <= 1e-9 && ratio >= 99.0;
  std::ostringstream detail;
  detail << "euclidean " << narrow.euclidean << " / " << wide.euclidean << ", KL "
         << narrow.kl_ab << " / " << wide.kl_ab << " nats, ratio " << ratio;
  return {"equal-euclidean-unequal-kl", detail.str(), pass};
}

DiagnosticCheck fisher_vs_fd_check() {
  double worst = 0.0;
  bool pass = true;
  auto check_point = [&](const PolicyFamily& fam, const ParamVector& theta) {
    FisherEstimate analytic = fisher_analytic(fam, theta);
    FisherEstimate fd = kl_hessian_fd(fam, theta, 1e-4);
    double dev = max_entry_deviation(analytic.matrix, fd.matrix);
    double tol = 1e-4 * (1.0 + analytic.matrix.max_abs());
    worst = std::max(worst, dev / tol);
    if (dev > tol) pass = false;
  };
  for (double mu : {-1.0, 0.0, 1.5})
    for (double sigma : {0.3, 1.0, 2.7}) {
      check_point(PolicyFamily::gaussian(), {{mu, sigma}, Chart::natural});
      check_point(PolicyFamily::gaussian(Chart::log_scale),
                  {{mu, std::log(sigma)}, Chart::log_scale});
    }
  for (double base : {-1.0, 0.0, 0.8}) {
    check_point(PolicyFamily::categorical(2), {{base, 0.2}});
    check_point(PolicyFamily::categorical(3), {{base, 0.0, 0.5}});
  }
  std::ostringstream detail;
  detail << "max deviation / tolerance over the grid: " << worst;
  return {"fisher-matches-fd-kl-hessian", detail.str(), pass};
}

DiagnosticCheck sampled_fisher_check() {
  PolicyFamily fam = PolicyFamily::gaussian();
  ParamVector theta{{0.0, 1.0}};
  FisherEstimate analytic = fisher_analytic(fam, theta);
  auto engine = make_engine(123);
  std::vector<ParamVector> scores;
  std::vector<std::size_t> sizes = {100, 1000, 10000, 100000};
  std::vector<double> errors;
  for (std::size_t target : sizes) {
    while (scores.size() < target) {
      double x = sample(fam, theta, engine);
      scores.push_back(score(fam, theta, x));
    }
    FisherEstimate est = fisher_from_samples(scores);
    errors.push_back(max_entry_deviation(est.matrix, analytic.matrix));
  }
  bool pass = errors.back() < errors.front() && errors.back() <= 0.05 * 2.0;
  std::ostringstream detail;
  detail << "max-entry error vs diag(1,2) at N = 1e2..1e5:";
  for (double e : errors) detail << ' ' << e;
  return {"sampled-fisher-convergence", detail.str(), pass};
}

// One NPG update of the same distribution, same underlying gradient, done in
// the natural and in the log-scale chart; d(eps) is the KL between the two
// post-update distributions. The matched vanilla step uses
// alpha = sqrt(2 eps / g.g) in both charts.
struct ChartInvariancePoint {
  double d_npg = 0.0;
  double d_vanilla = 0.0;
};

ChartInvariancePoint chart_invariance_at(double epsilon) {
  PolicyFamily nat = PolicyFamily::gaussian();
  PolicyFamily logf = PolicyFamily::gaussian(Chart::log_scale);
  ParamVector theta_nat{{0.3, 0.7}};
  ParamVector theta_log = reparameterize(nat, theta_nat, Chart::log_scale);
  double sigma = theta_nat.values[1];
  ParamVector g_nat{{0.4, -0.3}, Chart::natural};
  // Covector transform into the log chart: d/d(log sigma) = sigma * d/d(sigma).
  ParamVector g_log{{g_nat.values[0], sigma * g_nat.values[1]}, Chart::log_scale};

  auto from_nat = npg_update(nat, theta_nat, g_nat, fisher_analytic(nat, theta_nat),
                             epsilon);
  auto from_log = npg_update(logf, theta_log, g_log, fisher_analytic(logf, theta_log),
                             epsilon);
  ParamVector back = reparameterize(logf, from_log.theta_new, Chart::natural);
  ChartInvariancePoint point;
  point.d_npg = kl_closed_form(nat, from_nat.theta_new, back);

  double alpha = std::sqrt(2.0 * epsilon / dot(g_nat.values, g_nat.values));
  ParamVector van_nat = vanilla_update(nat, theta_nat, g_nat, alpha);
  ParamVector van_log = vanilla_update(logf, theta_log, g_log, alpha);
  ParamVector van_back = reparameterize(logf, van_log, Chart::natural);
  point.d_vanilla = kl_closed_form(nat, van_nat, van_back);
  return point;
}

DiagnosticCheck chart_invariance_check() {
  auto p2 = chart_invariance_at(1e-2);
  auto p3 = chart_invariance_at(1e-3);
  auto p4 = chart_invariance_at(1e-4);
  bool superlinear = p3.d_npg <= p2.d_npg / 10.0 && p4.d_npg <= p3.d_npg / 10.0;
  bool vanilla_gap = p4.d_vanilla > 10.0 * p4.d_npg;
  std::ostringstream detail;
  detail << "d_npg(1e-2,1e-3,1e-4) = " << p2.d_npg << ' ' << p3.d_npg << ' '
         << p4.d_npg << "; d_vanilla(1e-4) = " << p4.d_vanilla;
  return {"chart-invariance-decay", detail.str(), superlinear && vanilla_gap};
}

}  // namespace

DiagnosticsReport run_diagnostics() {
  DiagnosticsReport report;
  report.checks.push_back(figure2_check());
  report.checks.push_back(fisher_vs_fd_check());
  report.checks.push_back(sampled_fisher_check());
  report.checks.push_back(chart_invariance_check());
  return report;
}

}  // namespace npg
