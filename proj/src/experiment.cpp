#include "npg/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "npg/errors.hpp"
#include "npg/information_geometry.hpp"
#include "npg/natural_gradient.hpp"
#include "npg/rng.hpp"

namespace npg {

std::string method_name(Method m) {
  switch (m) {
    case Method::vanilla: return "vanilla";
    case Method::npg_exact_fisher: return "npg-exact-fisher";
    case Method::npg_sampled_fisher: return "npg-sampled-fisher";
    case Method::npg_cg: return "npg-cg";
  }
  return "?";
}

Method method_from_name(const std::string& name) {
  if (name == "vanilla") return Method::vanilla;
  if (name == "npg-exact-fisher") return Method::npg_exact_fisher;
  if (name == "npg-sampled-fisher") return Method::npg_sampled_fisher;
  if (name == "npg-cg") return Method::npg_cg;
  throw ConfigError("unknown method '" + name + "'");
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Raw key/value pairs from the file; every key must be consumed exactly once.
class KeyValues {
 public:
  explicit KeyValues(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      std::size_t hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      line = trim(line);
      if (line.empty()) continue;
      std::size_t eq = line.find('=');
      if (eq == std::string::npos)
        throw ConfigError("config line " + std::to_string(lineno) +
                          ": expected 'key = value'");
      std::string key = trim(line.substr(0, eq));
      std::string value = trim(line.substr(eq + 1));
      if (key.empty() || value.empty())
        throw ConfigError("config line " + std::to_string(lineno) +
                          ": empty key or value");
      if (!kv_.emplace(key, value).second)
        throw ConfigError("duplicate config key '" + key + "'");
    }
  }

  std::optional<std::string> take(const std::string& key) {
    auto it = kv_.find(key);
    if (it == kv_.end()) return std::nullopt;
    std::string v = it->second;
    kv_.erase(it);
    return v;
  }

  bool has(const std::string& key) const { return kv_.count(key) != 0; }

  void reject_leftovers() const {
    if (kv_.empty()) return;
    std::string keys;
    for (const auto& [k, v] : kv_) {
      if (!keys.empty()) keys += ", ";
      keys += k;
    }
    throw ConfigError("unknown config key(s): " + keys);
  }

 private:
  std::map<std::string, std::string> kv_;
};

double parse_double(const std::string& key, const std::string& s) {
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !std::isfinite(v))
    throw ConfigError("config key '" + key + "': bad number '" + s + "'");
  return v;
}

std::uint64_t parse_uint(const std::string& key, const std::string& s) {
  try {
    std::size_t pos = 0;
    if (!s.empty() && s[0] == '-') throw std::invalid_argument("negative");
    std::uint64_t v = std::stoull(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': bad integer '" + s + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& s) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw ConfigError("config key '" + key + "': expected true or false");
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> items;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      items.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  items.push_back(trim(cur));
  return items;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  KeyValues kv(text);
  ExperimentConfig cfg;

  if (auto v = kv.take("env")) {
    if (*v == "gaussian-bandit") {
      cfg.env = GaussianBandit{};
    } else if (*v == "gridworld") {
      cfg.env = Gridworld{};
    } else {
      throw ConfigError("config key 'env': unknown environment '" + *v + "'");
    }
  }
  const bool is_grid = std::holds_alternative<Gridworld>(cfg.env);

  // Bandit keys.
  static const char* kBanditKeys[] = {"bandit_target", "mu0", "sigma0"};
  if (is_grid) {
    for (const char* k : kBanditKeys)
      if (kv.has(k)) throw ConfigError(std::string("config key '") + k +
                                       "' does not apply to the gridworld");
  } else {
    auto& bandit = std::get<GaussianBandit>(cfg.env);
    if (auto v = kv.take("bandit_target")) bandit.target = parse_double("bandit_target", *v);
    if (auto v = kv.take("mu0")) cfg.mu0 = parse_double("mu0", *v);
    if (auto v = kv.take("sigma0")) cfg.sigma0 = parse_double("sigma0", *v);
  }

  // Gridworld keys.
  static const char* kGridKeys[] = {"grid_width", "grid_height", "start_x", "start_y",
                                    "goal_x",     "goal_y",      "step_reward",
                                    "goal_reward", "horizon"};
  if (!is_grid) {
    for (const char* k : kGridKeys)
      if (kv.has(k)) throw ConfigError(std::string("config key '") + k +
                                       "' does not apply to the bandit");
  } else {
    auto& grid = std::get<Gridworld>(cfg.env);
    if (auto v = kv.take("grid_width")) grid.width = parse_uint("grid_width", *v);
    if (auto v = kv.take("grid_height")) grid.height = parse_uint("grid_height", *v);
    std::uint64_t sx = 0, sy = 0;
    std::uint64_t gx = grid.width ? grid.width - 1 : 0;
    std::uint64_t gy = grid.height ? grid.height - 1 : 0;
    if (auto v = kv.take("start_x")) sx = parse_uint("start_x", *v);
    if (auto v = kv.take("start_y")) sy = parse_uint("start_y", *v);
    if (auto v = kv.take("goal_x")) gx = parse_uint("goal_x", *v);
    if (auto v = kv.take("goal_y")) gy = parse_uint("goal_y", *v);
    if (sx >= grid.width || sy >= grid.height || gx >= grid.width || gy >= grid.height)
      throw ConfigError("gridworld start/goal coordinates out of bounds");
    grid.start = sy * grid.width + sx;
    grid.goal = gy * grid.width + gx;
    if (auto v = kv.take("step_reward")) grid.step_reward = parse_double("step_reward", *v);
    if (auto v = kv.take("goal_reward")) grid.goal_reward = parse_double("goal_reward", *v);
    if (auto v = kv.take("horizon")) grid.horizon = parse_uint("horizon", *v);
  }

  if (auto v = kv.take("chart")) {
    if (*v == "natural") cfg.chart = Chart::natural;
    else if (*v == "log-scale") cfg.chart = Chart::log_scale;
    else throw ConfigError("config key 'chart': expected natural or log-scale");
  }
  if (auto v = kv.take("method")) cfg.method = method_from_name(*v);
  if (auto v = kv.take("epsilon")) cfg.epsilon = parse_double("epsilon", *v);
  if (auto v = kv.take("alpha")) cfg.alpha = parse_double("alpha", *v);
  if (auto v = kv.take("batch_size")) cfg.batch_size = parse_uint("batch_size", *v);
  if (auto v = kv.take("iterations")) cfg.iterations = parse_uint("iterations", *v);
  if (auto v = kv.take("gamma")) cfg.gamma = parse_double("gamma", *v);
  if (auto v = kv.take("seed")) cfg.seed = parse_uint("seed", *v);
  if (auto v = kv.take("damping")) cfg.damping = parse_double("damping", *v);
  if (auto v = kv.take("baseline")) {
    if (*v == "none") cfg.baseline = Baseline::none;
    else if (*v == "mean-return") cfg.baseline = Baseline::mean_return;
    else throw ConfigError("config key 'baseline': expected none or mean-return");
  }
  if (auto v = kv.take("backtracking")) cfg.backtracking = parse_bool("backtracking", *v);
  if (auto v = kv.take("out")) cfg.out = *v;
  if (auto v = kv.take("sigma_floor")) cfg.sigma_floor = parse_double("sigma_floor", *v);
  if (auto v = kv.take("sample_budget")) cfg.sample_budget = parse_uint("sample_budget", *v);
  if (auto v = kv.take("threshold")) cfg.threshold = parse_double("threshold", *v);
  if (auto v = kv.take("timing")) cfg.timing = parse_bool("timing", *v);
  if (auto v = kv.take("methods")) {
    for (const std::string& name : split_list(*v))
      cfg.methods.push_back(method_from_name(name));
  }
  if (auto v = kv.take("seeds")) {
    for (const std::string& s : split_list(*v))
      cfg.seeds.push_back(parse_uint("seeds", s));
  }
  if (auto v = kv.take("num_seeds")) {
    if (!cfg.seeds.empty())
      throw ConfigError("config keys 'seeds' and 'num_seeds' are mutually exclusive");
    std::uint64_t n = parse_uint("num_seeds", *v);
    for (std::uint64_t i = 0; i < n; ++i) cfg.seeds.push_back(cfg.seed + i);
  }

  kv.reject_leftovers();
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void validate_run_config(const ExperimentConfig& cfg) {
  try {
    validate_environment(cfg.env);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (cfg.iterations == 0) throw ConfigError("iterations must be >= 1");
  if (cfg.batch_size == 0) throw ConfigError("batch_size must be >= 1");
  if (!(cfg.gamma >= 0.0 && cfg.gamma <= 1.0)) throw ConfigError("gamma must be in [0, 1]");
  if (cfg.damping < 0.0) throw ConfigError("damping must be >= 0");
  if (!(cfg.sigma_floor > 0.0)) throw ConfigError("sigma_floor must be positive");
  if (std::holds_alternative<GaussianBandit>(cfg.env) && !(cfg.sigma0 > 0.0))
    throw ConfigError("sigma0 must be positive");
  if (std::holds_alternative<Gridworld>(cfg.env) && cfg.chart != Chart::natural)
    throw ConfigError("gridworld runs use the natural chart");
  if (cfg.epsilon && !(*cfg.epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  if (cfg.alpha && !(*cfg.alpha > 0.0)) throw ConfigError("alpha must be positive");
  if (cfg.method == Method::vanilla) {
    if (!cfg.alpha) throw ConfigError("vanilla method requires alpha");
    if (cfg.epsilon) throw ConfigError("vanilla method takes alpha, not epsilon");
  } else {
    if (!cfg.epsilon) throw ConfigError("npg methods require epsilon");
    if (cfg.alpha) throw ConfigError("npg methods take epsilon, not alpha");
  }
  std::uint64_t planned = static_cast<std::uint64_t>(cfg.batch_size) * cfg.iterations;
  if (planned > cfg.sample_budget)
    throw ConfigError("batch_size * iterations exceeds the sample budget (" +
                      std::to_string(planned) + " > " +
                      std::to_string(cfg.sample_budget) + ")");
}

ExperimentConfig specialize_for_method(const ExperimentConfig& base, Method m) {
  ExperimentConfig cfg = base;
  cfg.method = m;
  if (m == Method::vanilla) cfg.epsilon.reset();
  else cfg.alpha.reset();
  cfg.out.clear();
  cfg.methods.clear();
  cfg.seeds.clear();
  return cfg;
}

void validate_compare_config(const ExperimentConfig& cfg) {
  if (cfg.methods.size() < 2) throw ConfigError("compare needs at least 2 methods");
  if (cfg.seeds.size() < 2) throw ConfigError("compare needs at least 2 seeds");
  if (!cfg.threshold) throw ConfigError("compare needs an objective threshold");
  for (Method m : cfg.methods) validate_run_config(specialize_for_method(cfg, m));
}

namespace {

struct RunResult {
  MetricsTable table;
  std::size_t iterations_run = 0;
  bool reached_threshold = false;
  double final_objective = 0.0;
  bool aborted = false;
  std::string abort_reason;
};

ParamVector slice_state(const ParamVector& theta, std::size_t state) {
  return {Vec(theta.values.begin() + kGridActions * state,
              theta.values.begin() + kGridActions * (state + 1)),
          Chart::natural};
}

// Empirical state-visitation weights of a batch.
std::vector<double> visitation_weights(const std::vector<Trajectory>& batch,
                                       std::size_t n_states) {
  std::vector<double> w(n_states, 0.0);
  double total = 0.0;
  for (const Trajectory& t : batch)
    for (const Step& s : t.steps) {
      w[s.state] += 1.0;
      total += 1.0;
    }
  if (total > 0.0)
    for (double& v : w) v /= total;
  return w;
}

// Exact conditional Fisher: analytic per decision point, with gridworld
// states weighted by the batch's empirical visitation.
FisherEstimate exact_fisher(const Environment& env, const PolicyFamily& family,
                            const ParamVector& theta,
                            const std::vector<Trajectory>& batch, double damping) {
  if (std::holds_alternative<GaussianBandit>(env))
    return fisher_analytic(family, theta);  // positive definite, no damping needed

  const auto& grid = std::get<Gridworld>(env);
  std::vector<double> w = visitation_weights(batch, grid.cells());
  Mat full(theta.values.size());
  PolicyFamily cat = PolicyFamily::categorical(kGridActions);
  for (std::size_t s = 0; s < grid.cells(); ++s) {
    if (w[s] == 0.0) continue;
    FisherEstimate block = fisher_analytic(cat, slice_state(theta, s));
    for (std::size_t i = 0; i < kGridActions; ++i)
      for (std::size_t j = 0; j < kGridActions; ++j)
        full(kGridActions * s + i, kGridActions * s + j) = w[s] * block.matrix(i, j);
  }
  return damp(FisherEstimate::make(std::move(full), FisherProvenance::analytic), damping);
}

std::vector<const ParamVector*> batch_scores(const std::vector<Trajectory>& batch) {
  std::vector<const ParamVector*> scores;
  for (const Trajectory& t : batch)
    for (const ParamVector& s : t.scores) scores.push_back(&s);
  return scores;
}

// sigma floor: projected onto bandit policies after each KL-budgeted update.
void project_sigma_floor(const Environment& env, Chart chart, double floor,
                         ParamVector& theta) {
  if (!std::holds_alternative<GaussianBandit>(env)) return;
  if (chart == Chart::natural)
    theta.values[1] = std::max(theta.values[1], floor);
  else
    theta.values[1] = std::max(theta.values[1], std::log(floor));
}

struct StepOutcome {
  ParamVector theta_new;
  double realized_kl = 0.0;
  std::size_t backtracks = 0;
};

// Step + floor projection + KL audit, with optional halving until the
// realized KL is within 1.5x the budget.
template <typename KlFn>
StepOutcome apply_npg_step(const ExperimentConfig& cfg, const ParamVector& theta,
                           const ParamVector& direction, double alpha, double epsilon,
                           const KlFn& kl_fn) {
  double step = alpha;
  for (std::size_t k = 0;; ++k) {
    ParamVector candidate{axpy(step, direction.values, theta.values), theta.chart};
    project_sigma_floor(cfg.env, cfg.chart, cfg.sigma_floor, candidate);
    double realized = kl_fn(theta, candidate);
    if (cfg.backtracking && realized > 1.5 * epsilon && k < 10) {
      step *= 0.5;
      continue;
    }
    if (cfg.backtracking && realized > 1.5 * epsilon)
      throw RuntimeAbortError("backtracking failed to meet the KL budget");
    return {std::move(candidate), realized, k};
  }
}

RunResult run_core(const ExperimentConfig& cfg, std::optional<double> stop_threshold) {
  const PolicyFamily family = policy_family_for(cfg.env, cfg.chart);
  ParamVector theta = initial_theta(cfg.env, cfg.chart, cfg.mu0, cfg.sigma0);
  const bool is_grid = std::holds_alternative<Gridworld>(cfg.env);
  const std::size_t n_states = is_grid ? std::get<Gridworld>(cfg.env).cells() : 1;

  RunResult result;
  std::uint64_t rollouts_used = 0;
  // Scrambled run base keeps trajectory seed ranges of different runs
  // disjoint; within a run, seeds advance as base + iteration * batch + index.
  const std::uint64_t run_base = splitmix64(cfg.seed);

  for (std::size_t iter = 0; iter < cfg.iterations; ++iter) {
    auto started = std::chrono::steady_clock::now();

    std::vector<Trajectory> batch;
    batch.reserve(cfg.batch_size);
    for (std::size_t i = 0; i < cfg.batch_size; ++i) {
      std::uint64_t traj_seed =
          run_base + static_cast<std::uint64_t>(iter) * cfg.batch_size + i;
      batch.push_back(rollout(cfg.env, family, theta, traj_seed));
    }
    rollouts_used += cfg.batch_size;
    if (rollouts_used > cfg.sample_budget)
      throw std::logic_error("sample budget exceeded despite config validation");

    double objective = estimate_objective(batch, cfg.gamma);
    ParamVector gradient = reinforce_gradient(batch, cfg.gamma, cfg.baseline);

    MetricsRow row;
    row.iter = iter;
    row.objective = objective;
    row.grad_norm = norm2(gradient.values);

    result.iterations_run = iter + 1;
    result.final_objective = objective;
    if (stop_threshold && objective >= *stop_threshold) {
      result.table.rows.push_back(row);
      result.reached_threshold = true;
      result.iterations_run = iter;  // updates applied before the threshold was met
      break;
    }

    try {
      if (cfg.method == Method::vanilla) {
        // No sigma floor here: a step that leaves the chart is the failure
        // mode under study, and it aborts the run.
        row.alpha = *cfg.alpha;
        if (is_grid)
          theta.values = axpy(*cfg.alpha, gradient.values, theta.values);
        else
          theta = vanilla_update(family, theta, gradient, *cfg.alpha);
      } else {
        ParamVector direction;
        SolveReport solve;
        if (cfg.method == Method::npg_cg) {
          // Matrix-free Fisher: F v = mean_i s_i (s_i . v) + damping * v.
          auto scores = batch_scores(batch);
          const double inv_n = 1.0 / static_cast<double>(scores.size());
          MatVec matvec = [&scores, inv_n, &cfg](const Vec& v) {
            Vec out(v.size(), 0.0);
            for (const ParamVector* s : scores) {
              double c = dot(s->values, v) * inv_n;
              for (std::size_t k = 0; k < v.size(); ++k) out[k] += c * s->values[k];
            }
            for (std::size_t k = 0; k < v.size(); ++k) out[k] += cfg.damping * v[k];
            return out;
          };
          solve = conjugate_gradient(matvec, gradient.values);
          direction = ParamVector{solve.solution, gradient.chart};
        } else {
          FisherEstimate fisher =
              cfg.method == Method::npg_exact_fisher
                  ? exact_fisher(cfg.env, family, theta, batch, cfg.damping)
                  : damp(fisher_from_samples([&batch] {
                           std::vector<ParamVector> s;
                           for (const Trajectory& t : batch)
                             for (const ParamVector& sc : t.scores) s.push_back(sc);
                           return s;
                         }()),
                         cfg.damping);
          std::tie(direction, solve) = natural_direction(gradient, fisher);
        }

        double alpha = dynamic_step_size(gradient, direction, *cfg.epsilon);

        auto audit = [&](const ParamVector& a, const ParamVector& b) {
          if (!is_grid) return kl_closed_form(family, a, b);
          std::vector<double> w = visitation_weights(batch, n_states);
          PolicyFamily cat = PolicyFamily::categorical(kGridActions);
          double kl = 0.0;
          for (std::size_t s = 0; s < n_states; ++s)
            if (w[s] > 0.0)
              kl += w[s] * kl_closed_form(cat, slice_state(a, s), slice_state(b, s));
          return kl;
        };
        StepOutcome outcome =
            apply_npg_step(cfg, theta, direction, alpha, *cfg.epsilon, audit);
        theta = std::move(outcome.theta_new);

        row.natgrad_norm = norm2(direction.values);
        row.alpha = alpha;
        row.predicted_kl = *cfg.epsilon;
        row.realized_kl = outcome.realized_kl;
        row.solver_iters = solve.iterations;
        row.backtracks = outcome.backtracks;
      }
    } catch (const DegenerateGradientError&) {
      // Numerically null gradient: nothing to do this iteration; keep theta.
    } catch (const std::exception& e) {
      result.table.rows.push_back(row);
      result.aborted = true;
      result.abort_reason = e.what();
      break;
    }

    if (cfg.timing) {
      auto elapsed = std::chrono::steady_clock::now() - started;
      row.ms = std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
    }
    result.table.rows.push_back(row);
  }
  return result;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw RuntimeAbortError("cannot open output file '" + path + "'");
  out << content;
}

}  // namespace

MetricsTable run_experiment(const ExperimentConfig& cfg) {
  validate_run_config(cfg);
  RunResult result = run_core(cfg, cfg.threshold ? cfg.threshold : std::nullopt);
  if (!cfg.out.empty()) write_file(cfg.out, to_csv(result.table));
  if (result.aborted)
    throw RuntimeAbortError("run aborted at iteration " +
                            std::to_string(result.iterations_run - 1) + ": " +
                            result.abort_reason);
  return result.table;
}

ComparisonReport compare_methods(const ExperimentConfig& base,
                                 const std::vector<Method>& methods,
                                 const std::vector<std::uint64_t>& seeds) {
  ExperimentConfig check = base;
  check.methods = methods;
  check.seeds = seeds;
  validate_compare_config(check);

  ComparisonReport report;
  for (Method m : methods) {
    ExperimentConfig cfg = specialize_for_method(base, m);
    std::vector<std::size_t> iteration_counts;
    MethodSummary summary;
    summary.method = m;
    double final_sum = 0.0;
    for (std::uint64_t seed : seeds) {
      cfg.seed = seed;
      RunResult res = run_core(cfg, base.threshold);
      // A cell that aborts (chart violation) never reached the threshold;
      // it is censored at the iteration cap like any other non-finisher.
      ComparisonCell cell;
      cell.method = m;
      cell.seed = seed;
      cell.censored = !res.reached_threshold;
      cell.iterations_to_threshold =
          res.reached_threshold ? res.iterations_run : cfg.iterations;
      cell.final_objective = res.final_objective;
      iteration_counts.push_back(cell.iterations_to_threshold);
      final_sum += cell.final_objective;
      if (cell.censored) ++summary.censored_count;
      report.cells.push_back(cell);
    }
    std::sort(iteration_counts.begin(), iteration_counts.end());
    const std::size_t n = iteration_counts.size();
    summary.median_iterations =
        n % 2 == 1 ? static_cast<double>(iteration_counts[n / 2])
                   : 0.5 * (static_cast<double>(iteration_counts[n / 2 - 1]) +
                            static_cast<double>(iteration_counts[n / 2]));
    summary.min_iterations = iteration_counts.front();
    summary.max_iterations = iteration_counts.back();
    summary.mean_final_objective = final_sum / static_cast<double>(n);
    report.summaries.push_back(summary);
  }
  return report;
}

std::string comparison_csv(const ComparisonReport& report) {
  std::ostringstream out;
  out << "method,seed,iterations_to_threshold,censored,final_objective\n";
  for (const ComparisonCell& c : report.cells)
    out << method_name(c.method) << ',' << c.seed << ',' << c.iterations_to_threshold
        << ',' << (c.censored ? 1 : 0) << ',' << format_double(c.final_objective)
        << '\n';
  for (const MethodSummary& s : report.summaries)
    out << "# summary method=" << method_name(s.method)
        << " median_iterations=" << format_double(s.median_iterations)
        << " min=" << s.min_iterations << " max=" << s.max_iterations
        << " censored=" << s.censored_count
        << " mean_final_objective=" << format_double(s.mean_final_objective) << '\n';
  return out.str();
}

std::string comparison_text(const ComparisonReport& report) {
  std::ostringstream out;
  out << "method                median-iters   min   max  censored  mean-final-objective\n";
  for (const MethodSummary& s : report.summaries) {
    char line[160];
    std::snprintf(line, sizeof(line), "%-20s %13.1f %5zu %5zu %9zu  %.6g\n",
                  method_name(s.method).c_str(), s.median_iterations, s.min_iterations,
                  s.max_iterations, s.censored_count, s.mean_final_objective);
    out << line;
  }
  return out.str();
}

bool DiagnosticsReport::all_pass() const {
  for (const DiagnosticCheck& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string diagnostics_text(const DiagnosticsReport& report) {
  std::ostringstream out;
  for (const DiagnosticCheck& c : report.checks)
    out << (c.pass ? "PASS" : "FAIL") << "  " << c.name << ": " << c.detail << '\n';
  return out.str();
}

}  // namespace npg
