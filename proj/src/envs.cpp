#include "npg/envs.hpp"

#include <cmath>
#include <stdexcept>

#include "npg/rng.hpp"

namespace npg {

namespace {

std::size_t grid_move(const Gridworld& grid, std::size_t cell, std::size_t action) {
  std::size_t x = cell % grid.width;
  std::size_t y = cell / grid.width;
  switch (action) {
    case 0:  // up
      if (y > 0) --y;
      break;
    case 1:  // right
      if (x + 1 < grid.width) ++x;
      break;
    case 2:  // down
      if (y + 1 < grid.height) ++y;
      break;
    case 3:  // left
      if (x > 0) --x;
      break;
    default:
      throw std::invalid_argument("gridworld action out of range");
  }
  return y * grid.width + x;
}

void check_family(const Environment& env, const PolicyFamily& family,
                  const ParamVector& theta) {
  if (std::holds_alternative<GaussianBandit>(env)) {
    if (family.kind != FamilyKind::gaussian_diag || family.dimension != 2)
      throw std::invalid_argument("bandit rollout needs the 1-d Gaussian family");
    validate_theta(family, theta);
    return;
  }
  const auto& grid = std::get<Gridworld>(env);
  if (family.kind != FamilyKind::categorical_softmax ||
      family.dimension != kGridActions || family.chart != Chart::natural)
    throw std::invalid_argument("gridworld rollout needs the 4-way categorical family");
  if (theta.chart != Chart::natural)
    throw std::invalid_argument("gridworld parameters live in the natural chart");
  if (theta.values.size() != kGridActions * grid.cells())
    throw std::invalid_argument("gridworld parameter length must be 4 * cells");
  if (!all_finite(theta.values))
    throw std::invalid_argument("parameters must be finite");
}

}  // namespace

void validate_environment(const Environment& env) {
  if (std::holds_alternative<GaussianBandit>(env)) return;
  const auto& grid = std::get<Gridworld>(env);
  if (grid.width == 0 || grid.height == 0)
    throw std::invalid_argument("gridworld dimensions must be positive");
  if (grid.start >= grid.cells() || grid.goal >= grid.cells())
    throw std::invalid_argument("gridworld start/goal out of bounds");
  if (grid.start == grid.goal)
    throw std::invalid_argument("gridworld goal must differ from start");
  if (grid.horizon == 0) throw std::invalid_argument("gridworld horizon must be >= 1");
}

PolicyFamily policy_family_for(const Environment& env, Chart chart) {
  if (std::holds_alternative<GaussianBandit>(env)) return PolicyFamily::gaussian(chart);
  if (chart != Chart::natural)
    throw std::invalid_argument("gridworld policies only use the natural chart");
  return PolicyFamily::categorical(kGridActions);
}

std::size_t param_dimension(const Environment& env) {
  if (std::holds_alternative<GaussianBandit>(env)) return 2;
  return kGridActions * std::get<Gridworld>(env).cells();
}

ParamVector initial_theta(const Environment& env, Chart chart, double mu0,
                          double sigma0) {
  if (std::holds_alternative<GaussianBandit>(env)) {
    if (!(sigma0 > 0.0)) throw std::invalid_argument("sigma0 must be positive");
    if (chart == Chart::natural) return {{mu0, sigma0}, Chart::natural};
    return {{mu0, std::log(sigma0)}, Chart::log_scale};
  }
  if (chart != Chart::natural)
    throw std::invalid_argument("gridworld policies only use the natural chart");
  return {Vec(param_dimension(env), 0.0), Chart::natural};
}

Trajectory rollout(const Environment& env, const PolicyFamily& family,
                   const ParamVector& theta, std::uint64_t seed) {
  validate_environment(env);
  check_family(env, family, theta);
  auto engine = make_engine(seed);

  Trajectory traj;
  traj.seed = seed;

  if (const auto* bandit = std::get_if<GaussianBandit>(&env)) {
    double a = sample(family, theta, engine);
    double d = a - bandit->target;
    traj.steps.push_back({0, a, -d * d});
    traj.scores.push_back(score(family, theta, a));
    return traj;
  }

  const auto& grid = std::get<Gridworld>(env);
  std::size_t state = grid.start;
  for (std::size_t t = 0; t < grid.horizon; ++t) {
    ParamVector local{Vec(theta.values.begin() + kGridActions * state,
                          theta.values.begin() + kGridActions * (state + 1)),
                      Chart::natural};
    double a = sample(family, local, engine);
    auto action = static_cast<std::size_t>(a);
    ParamVector local_score = score(family, local, a);
    ParamVector full{Vec(theta.values.size(), 0.0), Chart::natural};
    for (std::size_t i = 0; i < kGridActions; ++i)
      full.values[kGridActions * state + i] = local_score.values[i];

    std::size_t next = grid_move(grid, state, action);
    double reward = grid.step_reward + (next == grid.goal ? grid.goal_reward : 0.0);
    traj.steps.push_back({state, a, reward});
    traj.scores.push_back(std::move(full));
    state = next;
    if (state == grid.goal) break;
  }
  return traj;
}

double estimate_objective(const std::vector<Trajectory>& trajectories, double gamma) {
  if (trajectories.empty())
    throw std::invalid_argument("estimate_objective: empty trajectory list");
  double total = 0.0;
  for (const Trajectory& traj : trajectories) {
    double discount = 1.0;
    double ret = 0.0;
    for (const Step& step : traj.steps) {
      ret += discount * step.reward;
      discount *= gamma;
    }
    total += ret;
  }
  return total / static_cast<double>(trajectories.size());
}

ParamVector reinforce_gradient(const std::vector<Trajectory>& trajectories,
                               double gamma, Baseline baseline) {
  if (trajectories.empty())
    throw std::invalid_argument("reinforce_gradient: empty trajectory list");
  std::size_t dim = 0;
  Chart chart = Chart::natural;
  bool first = true;
  for (const Trajectory& traj : trajectories) {
    if (traj.scores.size() != traj.steps.size())
      throw std::invalid_argument("reinforce_gradient: scores/steps length mismatch");
    for (const ParamVector& s : traj.scores) {
      if (first) {
        dim = s.values.size();
        chart = s.chart;
        first = false;
      } else if (s.values.size() != dim || s.chart != chart) {
        throw std::invalid_argument("reinforce_gradient: inconsistent score dimensions");
      }
    }
  }
  if (first)
    throw std::invalid_argument("reinforce_gradient: no steps in any trajectory");

  // Discounted reward-to-go per step, computed backwards.
  std::vector<Vec> rewards_to_go(trajectories.size());
  double mean_return = 0.0;
  for (std::size_t i = 0; i < trajectories.size(); ++i) {
    const auto& steps = trajectories[i].steps;
    Vec g(steps.size(), 0.0);
    double acc = 0.0;
    for (std::size_t t = steps.size(); t-- > 0;) {
      acc = steps[t].reward + gamma * acc;
      g[t] = acc;
    }
    rewards_to_go[i] = std::move(g);
    mean_return += steps.empty() ? 0.0 : rewards_to_go[i][0];
  }
  mean_return /= static_cast<double>(trajectories.size());
  const double b = baseline == Baseline::mean_return ? mean_return : 0.0;

  Vec grad(dim, 0.0);
  for (std::size_t i = 0; i < trajectories.size(); ++i) {
    const Trajectory& traj = trajectories[i];
    for (std::size_t t = 0; t < traj.steps.size(); ++t) {
      double w = rewards_to_go[i][t] - b;
      const Vec& s = traj.scores[t].values;
      for (std::size_t k = 0; k < dim; ++k) grad[k] += w * s[k];
    }
  }
  const double inv_n = 1.0 / static_cast<double>(trajectories.size());
  for (double& v : grad) v *= inv_n;
  return {grad, chart};
}

}  // namespace npg
