// Experiment driver: run / compare / diagnostics / validate.
// Exit codes: 0 ok, 1 config error, 2 runtime abort, 3 diagnostics failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "npg/errors.hpp"
#include "npg/experiment.hpp"

namespace {

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> iterations;
  std::optional<double> epsilon;
  std::optional<double> alpha;
  std::optional<std::string> method;
  std::optional<std::string> out;
};

void add_override_flags(CLI::App* cmd, Overrides& ov) {
  cmd->add_option("--seed", ov.seed, "override the config seed");
  cmd->add_option("--iterations", ov.iterations, "override the iteration count");
  cmd->add_option("--epsilon", ov.epsilon, "override epsilon (clears alpha)");
  cmd->add_option("--alpha", ov.alpha, "override alpha (clears epsilon)");
  cmd->add_option("--method", ov.method, "override the method");
  cmd->add_option("--out", ov.out, "override the output path");
}

void apply(const Overrides& ov, npg::ExperimentConfig& cfg) {
  if (ov.seed) cfg.seed = *ov.seed;
  if (ov.iterations) cfg.iterations = *ov.iterations;
  if (ov.epsilon) {
    cfg.epsilon = *ov.epsilon;
    if (!ov.alpha) cfg.alpha.reset();
  }
  if (ov.alpha) {
    cfg.alpha = *ov.alpha;
    if (!ov.epsilon) cfg.epsilon.reset();
  }
  if (ov.method) cfg.method = npg::method_from_name(*ov.method);
  if (ov.out) cfg.out = *ov.out;
}

int run_command(const std::string& path, const Overrides& ov) {
  npg::ExperimentConfig cfg = npg::load_config_file(path);
  apply(ov, cfg);
  npg::validate_run_config(cfg);
  npg::MetricsTable table = npg::run_experiment(cfg);
  const auto& rows = table.rows;
  std::cout << npg::method_name(cfg.method) << ": " << rows.size()
            << " iterations, final objective "
            << (rows.empty() ? 0.0 : rows.back().objective) << '\n';
  if (!cfg.out.empty()) std::cout << "metrics written to " << cfg.out << '\n';
  return 0;
}

int compare_command(const std::string& path, const Overrides& ov) {
  npg::ExperimentConfig cfg = npg::load_config_file(path);
  apply(ov, cfg);
  npg::validate_compare_config(cfg);
  npg::ComparisonReport report = npg::compare_methods(cfg, cfg.methods, cfg.seeds);
  std::cout << npg::comparison_text(report);
  if (!cfg.out.empty()) {
    std::ofstream out(cfg.out, std::ios::binary);
    if (!out) throw npg::RuntimeAbortError("cannot open output file '" + cfg.out + "'");
    out << npg::comparison_csv(report);
    std::cout << "report written to " << cfg.out << '\n';
  }
  return 0;
}

int diagnostics_command() {
  npg::DiagnosticsReport report = npg::run_diagnostics();
  std::cout << npg::diagnostics_text(report);
  return report.all_pass() ? 0 : 3;
}

int validate_command(const std::string& path) {
  npg::ExperimentConfig cfg = npg::load_config_file(path);
  if (cfg.methods.size() >= 2)
    npg::validate_compare_config(cfg);
  else
    npg::validate_run_config(cfg);
  std::cout << "ok\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"natural and vanilla policy gradients on desk-scale problems"};
  app.require_subcommand(1);

  std::string run_path, compare_path, validate_path;
  Overrides run_ov, compare_ov;

  CLI::App* run = app.add_subcommand("run", "train one method from a config file");
  run->add_option("config", run_path, "config file")->required();
  add_override_flags(run, run_ov);

  CLI::App* compare =
      app.add_subcommand("compare", "race the configured methods over shared seeds");
  compare->add_option("config", compare_path, "config file")->required();
  add_override_flags(compare, compare_ov);

  CLI::App* diagnostics =
      app.add_subcommand("diagnostics", "run the bundled numeric checks");

  CLI::App* validate = app.add_subcommand("validate", "check a config file");
  validate->add_option("config", validate_path, "config file")->required();

  try {
    app.parse(argc, argv);
    if (run->parsed()) return run_command(run_path, run_ov);
    if (compare->parsed()) return compare_command(compare_path, compare_ov);
    if (diagnostics->parsed()) return diagnostics_command();
    if (validate->parsed()) return validate_command(validate_path);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const npg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
