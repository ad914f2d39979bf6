// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failed criteria. Each criterion pins its own tolerances.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "npg/errors.hpp"
#include "npg/experiment.hpp"
#include "npg/information_geometry.hpp"
#include "npg/natural_gradient.hpp"
#include "npg/rng.hpp"
#include "test_util.hpp"

using namespace npg;

namespace {

struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool condition, const std::string& message) {
  if (!condition) throw CheckFailure(message);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// --- 1. Fisher equals the local KL Hessian --------------------------------

std::string criterion_fisher_kl_hessian() {
  auto eng = make_engine(101);
  double worst = 0.0;
  auto check_point = [&](const PolicyFamily& fam, const ParamVector& theta) {
    FisherEstimate analytic = fisher_analytic(fam, theta);
    FisherEstimate fd = kl_hessian_fd(fam, theta, 1e-4);
    double dev = test::max_entry_diff(analytic.matrix, fd.matrix);
    double tol = 1e-4 * (1.0 + analytic.matrix.max_abs());
    worst = std::max(worst, dev / tol);
    require(dev <= tol, "fisher/fd deviation " + fmt(dev) + " exceeds " + fmt(tol));
  };
  for (int i = 0; i < 20; ++i) {
    double mu = test::uniform(eng, -2.0, 2.0);
    double sigma = test::uniform(eng, 0.5, 2.5);
    if (i % 2 == 0)
      check_point(PolicyFamily::gaussian(), {{mu, sigma}, Chart::natural});
    else
      check_point(PolicyFamily::gaussian(Chart::log_scale),
                  {{mu, std::log(sigma)}, Chart::log_scale});
  }
  PolicyFamily cat3 = PolicyFamily::categorical(3);
  for (int i = 0; i < 20; ++i) {
    ParamVector theta{{test::uniform(eng, -2.0, 2.0), test::uniform(eng, -2.0, 2.0),
                       test::uniform(eng, -2.0, 2.0)}};
    check_point(cat3, theta);
  }
  return "40 points, worst deviation/tolerance " + fmt(worst);
}

// --- 2. Outer-product Fisher estimator ------------------------------------

std::string criterion_sampled_fisher() {
  PolicyFamily fam = PolicyFamily::gaussian();
  ParamVector theta{{0.0, 1.0}};
  auto eng = make_engine(202);
  std::vector<ParamVector> scores;
  scores.reserve(100000);
  for (int i = 0; i < 100000; ++i) {
    double x = sample(fam, theta, eng);
    scores.push_back(score(fam, theta, x));
  }
  FisherEstimate est = fisher_from_samples(scores);
  double e00 = std::abs(est.matrix(0, 0) - 1.0);
  double e11 = std::abs(est.matrix(1, 1) - 2.0);
  double e01 = std::abs(est.matrix(0, 1));
  require(e00 <= 0.05, "entry (0,0) off by " + fmt(e00));
  require(e11 <= 0.05 * 2.0, "entry (1,1) off by " + fmt(e11));
  require(e01 <= 0.05, "entry (0,1) off by " + fmt(e01));
  return "10^5 scores vs diag(1,2): errors " + fmt(e00) + ", " + fmt(e11) + ", " +
         fmt(e01);
}

// --- 3. Equal Euclidean distance, unequal KL ------------------------------

std::string criterion_figure2() {
  PolicyFamily fam = PolicyFamily::gaussian();
  auto narrow = euclidean_vs_kl_diagnostic(fam, {{0.0, 0.3}}, {{1.0, 0.3}});
  auto wide = euclidean_vs_kl_diagnostic(fam, {{0.0, 3.0}}, {{1.0, 3.0}});
  require(std::abs(narrow.euclidean - 1.0) <= 1e-12, "narrow euclidean != 1");
  require(std::abs(wide.euclidean - 1.0) <= 1e-12, "wide euclidean != 1");
  require(std::abs(narrow.kl_ab - 50.0 / 9.0) <= 1e-9,
          "narrow KL " + fmt(narrow.kl_ab) + " != 5.5556");
  require(std::abs(wide.kl_ab - 1.0 / 18.0) <= 1e-9,
          "wide KL " + fmt(wide.kl_ab) + " != 0.05556");
  double ratio = narrow.kl_ab / wide.kl_ab;
  require(ratio >= 99.0, "KL ratio " + fmt(ratio) + " < 99");
  return "euclidean 1 and 1, KL " + fmt(narrow.kl_ab) + " and " + fmt(wide.kl_ab) +
         " nats, ratio " + fmt(ratio);
}

// --- 4. Dynamic step size keeps the realized KL on budget -----------------

std::string criterion_kl_budget() {
  PolicyFamily fam = PolicyFamily::gaussian();
  auto eng = make_engine(404);
  double worst3 = 0.0, worst5 = 0.0;
  for (int i = 0; i < 20; ++i) {
    ParamVector theta{{test::uniform(eng, -2.0, 2.0), test::uniform(eng, 0.5, 2.0)}};
    Vec g{test::uniform(eng, -1.0, 1.0), test::uniform(eng, -1.0, 1.0)};
    while (norm2(g) < 0.1)
      g = {test::uniform(eng, -1.0, 1.0), test::uniform(eng, -1.0, 1.0)};
    ParamVector gradient{g, Chart::natural};
    FisherEstimate fisher = fisher_analytic(fam, theta);

    UpdateReport coarse = npg_update(fam, theta, gradient, fisher, 1e-3);
    double r3 = *coarse.realized_kl / 1e-3;
    require(r3 >= 0.8 && r3 <= 1.2, "ratio " + fmt(r3) + " outside [0.8, 1.2]");
    worst3 = std::max(worst3, std::abs(r3 - 1.0));

    UpdateReport fine = npg_update(fam, theta, gradient, fisher, 1e-5);
    double r5 = *fine.realized_kl / 1e-5;
    require(r5 >= 0.95 && r5 <= 1.05, "ratio " + fmt(r5) + " outside [0.95, 1.05]");
    worst5 = std::max(worst5, std::abs(r5 - 1.0));
  }
  return "worst |realized/eps - 1|: " + fmt(worst3) + " at 1e-3, " + fmt(worst5) +
         " at 1e-5";
}

// --- 5. Chart invariance of the update ------------------------------------

std::string criterion_chart_invariance() {
  PolicyFamily nat = PolicyFamily::gaussian();
  PolicyFamily logf = PolicyFamily::gaussian(Chart::log_scale);
  ParamVector theta_nat{{0.3, 0.7}};
  ParamVector theta_log = reparameterize(nat, theta_nat, Chart::log_scale);
  double sigma = theta_nat.values[1];
  ParamVector g_nat{{0.4, -0.3}};
  ParamVector g_log{{0.4, sigma * -0.3}, Chart::log_scale};

  auto npg_gap = [&](double eps) {
    UpdateReport a = npg_update(nat, theta_nat, g_nat, fisher_analytic(nat, theta_nat), eps);
    UpdateReport b =
        npg_update(logf, theta_log, g_log, fisher_analytic(logf, theta_log), eps);
    return kl_closed_form(nat, a.theta_new,
                          reparameterize(logf, b.theta_new, Chart::natural));
  };
  auto vanilla_gap = [&](double eps) {
    double alpha = std::sqrt(2.0 * eps / dot(g_nat.values, g_nat.values));
    ParamVector a = vanilla_update(nat, theta_nat, g_nat, alpha);
    ParamVector b = vanilla_update(logf, theta_log, g_log, alpha);
    return kl_closed_form(nat, a, reparameterize(logf, b, Chart::natural));
  };

  double d2 = npg_gap(1e-2), d3 = npg_gap(1e-3), d4 = npg_gap(1e-4);
  require(d3 <= d2 / 10.0, "d(1e-3) = " + fmt(d3) + " > d(1e-2)/10 = " + fmt(d2 / 10.0));
  require(d4 <= d3 / 10.0, "d(1e-4) = " + fmt(d4) + " > d(1e-3)/10 = " + fmt(d3 / 10.0));
  double dv = vanilla_gap(1e-4);
  require(dv > 10.0 * d4,
          "vanilla gap " + fmt(dv) + " not 10x the npg gap " + fmt(d4));
  return "npg gaps " + fmt(d2) + " -> " + fmt(d3) + " -> " + fmt(d4) +
         ", vanilla gap " + fmt(dv) + " at 1e-4";
}

// --- 6. Identity Fisher reduces npg to vanilla ----------------------------

std::string criterion_identity_fisher() {
  FisherEstimate identity =
      FisherEstimate::make(Mat::identity(3), FisherProvenance::analytic);
  ParamVector g{{0.3, -1.7, 2.5}};
  auto [direct_dir, direct_rep] = natural_direction(g, identity, SolverChoice::direct);
  auto [cg_dir, cg_rep] = natural_direction(g, identity, SolverChoice::cg);
  for (std::size_t i = 0; i < 3; ++i) {
    require(direct_dir.values[i] == g.values[i], "direct direction differs from g");
    require(cg_dir.values[i] == g.values[i], "cg direction differs from g");
  }
  return "direct and cg directions equal the gradient exactly";
}

// --- 7. CG agrees with the direct solver ----------------------------------

std::string criterion_solver_oracle() {
  double worst = 0.0;
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    std::size_t n = 2 + trial % 49;
    auto eng = make_engine(7000 + trial);
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
    Vec rhs(n);
    for (double& v : rhs) v = normal(eng);

    SolveReport direct = solve_spd(a, rhs);
    SolveReport cg =
        conjugate_gradient([&a](const Vec& v) { return a.apply(v); }, rhs, 1e-12);
    double rel = norm2(sub(cg.solution, direct.solution)) /
                 std::max(norm2(direct.solution), 1e-300);
    worst = std::max(worst, rel);
    require(rel <= 1e-6, "cg vs direct relative difference " + fmt(rel));
  }
  SolveReport one = conjugate_gradient(
      [](const Vec& v) { return v; }, Vec{2.0, -1.0, 0.5}, 1e-10);
  require(one.iterations == 1, "cg on the identity took more than one iteration");
  return "100 systems (dims 2-50), worst relative difference " + fmt(worst);
}

// --- 8. Convergence race on the ill-conditioned bandit --------------------

ExperimentConfig race_base_config() {
  // The shipped race: configs/race_bandit.cfg carries the same values.
  ExperimentConfig base;
  base.env = GaussianBandit{2.0};
  base.chart = Chart::natural;
  base.mu0 = 0.0;
  base.sigma0 = 0.1;
  base.alpha = 0.05;
  base.epsilon = 1e-2;
  base.batch_size = 300;
  base.iterations = 400;
  base.gamma = 1.0;
  base.baseline = Baseline::none;
  base.threshold = -0.25;
  return base;
}

std::string criterion_convergence_race() {
  ExperimentConfig base = race_base_config();
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 61; s <= 80; ++s) seeds.push_back(s);
  ComparisonReport report =
      compare_methods(base, {Method::vanilla, Method::npg_exact_fisher}, seeds);
  double vanilla_median = report.summaries[0].median_iterations;
  double npg_median = report.summaries[1].median_iterations;
  std::string detail = "median iterations to J >= -0.25: vanilla " +
                       fmt(vanilla_median) + " (censored " +
                       std::to_string(report.summaries[0].censored_count) + "/20), npg " +
                       fmt(npg_median) + " (censored " +
                       std::to_string(report.summaries[1].censored_count) + "/20)";
  require(npg_median <= 0.5 * vanilla_median, detail);
  return detail;
}

// --- 9. REINFORCE gradient matches the analytic bandit gradient -----------

std::string criterion_reinforce() {
  Environment env = GaussianBandit{2.0};
  PolicyFamily fam = policy_family_for(env);
  ParamVector theta{{0.0, 1.0}};
  const std::size_t n = 100000;
  std::vector<Trajectory> batch;
  batch.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i)
    batch.push_back(rollout(env, fam, theta, 90000 + i));
  ParamVector g = reinforce_gradient(batch, 1.0, Baseline::none);

  const double analytic[2] = {4.0, -2.0};  // (-2(mu - a*), -2 sigma)
  std::string detail = "estimate (" + fmt(g.values[0]) + ", " + fmt(g.values[1]) +
                       ") vs analytic (4, -2)";
  for (std::size_t k = 0; k < 2; ++k) {
    double mean = 0.0, sq = 0.0;
    for (const Trajectory& t : batch) {
      double c = t.steps[0].reward * t.scores[0].values[k];
      mean += c;
      sq += c * c;
    }
    mean /= static_cast<double>(n);
    double se = std::sqrt((sq / n - mean * mean) / static_cast<double>(n));
    require(std::abs(g.values[k] - analytic[k]) <= 4.0 * se,
            "component " + std::to_string(k) + " off by " +
                fmt(std::abs(g.values[k] - analytic[k])) + " > 4 se = " + fmt(4.0 * se));
  }
  return detail;
}

// --- 10. Byte-identical reruns ---------------------------------------------

std::string criterion_determinism() {
  ExperimentConfig cfg;
  cfg.env = GaussianBandit{2.0};
  cfg.mu0 = 0.0;
  cfg.sigma0 = 1.0;
  cfg.method = Method::npg_exact_fisher;
  cfg.epsilon = 1e-3;
  cfg.batch_size = 1000;
  cfg.iterations = 50;
  cfg.gamma = 1.0;
  cfg.seed = 7;

  auto run_to = [&](const std::string& path) {
    cfg.out = path;
    run_experiment(cfg);
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  std::string a = run_to("acceptance_run_a.csv");
  std::string b = run_to("acceptance_run_b.csv");
  std::remove("acceptance_run_a.csv");
  std::remove("acceptance_run_b.csv");
  require(!a.empty(), "no CSV produced");
  require(a == b, "reruns differ");
  return "two runs, identical " + std::to_string(a.size()) + "-byte CSV";
}

struct Criterion {
  const char* name;
  std::function<std::string()> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"01 fisher-equals-local-kl-hessian", criterion_fisher_kl_hessian},
      {"02 outer-product-fisher-estimator", criterion_sampled_fisher},
      {"03 equal-euclidean-unequal-kl", criterion_figure2},
      {"04 dynamic-step-kl-budget", criterion_kl_budget},
      {"05 chart-invariance", criterion_chart_invariance},
      {"06 identity-fisher-equivalence", criterion_identity_fisher},
      {"07 cg-matches-direct-solve", criterion_solver_oracle},
      {"08 npg-vs-vanilla-race", criterion_convergence_race},
      {"09 reinforce-matches-analytic-gradient", criterion_reinforce},
      {"10 deterministic-metrics-csv", criterion_determinism},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    try {
      std::string detail = criterion.body();
      std::cout << "PASS  " << criterion.name << ": " << detail << '\n';
    } catch (const std::exception& e) {
      std::cout << "FAIL  " << criterion.name << ": " << e.what() << '\n';
      ++failures;
    }
  }
  if (failures > 0)
    std::cout << failures << " of " << criteria.size() << " criteria failed\n";
  else
    std::cout << "all " << criteria.size() << " criteria passed\n";
  return failures;
}
