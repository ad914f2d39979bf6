#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "npg/envs.hpp"
#include "npg/metrics.hpp"

namespace npg {

enum class Method { vanilla, npg_exact_fisher, npg_sampled_fisher, npg_cg };

std::string method_name(Method m);
Method method_from_name(const std::string& name);  // throws ConfigError

// Everything a run needs, parsed from a flat key = value file. Exactly one
// of epsilon/alpha must be set for a run, matching the method.
struct ExperimentConfig {
  Environment env = GaussianBandit{};
  Chart chart = Chart::natural;
  double mu0 = 0.0;
  double sigma0 = 1.0;
  Method method = Method::npg_exact_fisher;
  std::optional<double> epsilon;
  std::optional<double> alpha;
  std::size_t batch_size = 100;
  std::size_t iterations = 50;
  double gamma = 0.99;
  std::uint64_t seed = 0;
  double damping = 1e-4;
  Baseline baseline = Baseline::none;
  bool backtracking = false;
  std::string out;
  double sigma_floor = 1e-3;
  std::uint64_t sample_budget = 10000000;
  std::optional<double> threshold;
  bool timing = false;
  // compare-only
  std::vector<Method> methods;
  std::vector<std::uint64_t> seeds;
};

ExperimentConfig parse_config(const std::string& text);      // throws ConfigError
ExperimentConfig load_config_file(const std::string& path);  // throws ConfigError
void validate_run_config(const ExperimentConfig& config);    // throws ConfigError
void validate_compare_config(const ExperimentConfig& config);

// Specialization of a compare base config to one method: keeps epsilon for
// the npg methods, alpha for vanilla, and drops the output path.
ExperimentConfig specialize_for_method(const ExperimentConfig& base, Method m);

// The training loop: rollout batch -> REINFORCE gradient -> update. Writes
// the metrics CSV when config.out is set; on a runtime abort the partial
// table is flushed before RuntimeAbortError propagates.
MetricsTable run_experiment(const ExperimentConfig& config);

struct ComparisonCell {
  Method method = Method::vanilla;
  std::uint64_t seed = 0;
  std::size_t iterations_to_threshold = 0;  // iteration cap when censored
  bool censored = false;
  double final_objective = 0.0;
};

struct MethodSummary {
  Method method = Method::vanilla;
  double median_iterations = 0.0;
  std::size_t min_iterations = 0, max_iterations = 0;
  std::size_t censored_count = 0;
  double mean_final_objective = 0.0;
};

struct ComparisonReport {
  std::vector<ComparisonCell> cells;
  std::vector<MethodSummary> summaries;
};

// Runs every (method, seed) cell on the shared seed set, stopping each cell
// once the training-batch objective reaches config.threshold.
ComparisonReport compare_methods(const ExperimentConfig& base,
                                 const std::vector<Method>& methods,
                                 const std::vector<std::uint64_t>& seeds);

std::string comparison_csv(const ComparisonReport& report);
std::string comparison_text(const ComparisonReport& report);

struct DiagnosticCheck {
  std::string name;
  std::string detail;
  bool pass = false;
};

struct DiagnosticsReport {
  std::vector<DiagnosticCheck> checks;
  bool all_pass() const;
};

// The bundled numeric checks: equal-Euclidean/unequal-KL pairs, Fisher vs
// finite-difference KL Hessian over a parameter grid, sampled-Fisher
// convergence, and the chart-invariance decay table.
DiagnosticsReport run_diagnostics();

std::string diagnostics_text(const DiagnosticsReport& report);

}  // namespace npg
