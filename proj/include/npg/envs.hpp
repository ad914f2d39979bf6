#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "npg/distributions.hpp"

namespace npg {

// One-step bandit: a real action a drawn from the Gaussian policy earns
// reward -(a - target)^2.
struct GaussianBandit {
  double target = 2.0;
};

// Tabular MDP on a width x height grid with one softmax over the four
// cardinal moves per cell. Moves off the edge leave the agent in place. The
// episode ends on reaching the goal or after `horizon` steps.
struct Gridworld {
  std::size_t width = 4, height = 4;
  std::size_t start = 0, goal = 15;  // cell ids, id = y * width + x
  double step_reward = -0.01;
  double goal_reward = 1.0;
  std::size_t horizon = 50;

  std::size_t cells() const { return width * height; }
};

using Environment = std::variant<GaussianBandit, Gridworld>;

constexpr std::size_t kGridActions = 4;  // up, right, down, left

void validate_environment(const Environment& env);

// Per-decision-point family: Gaussian for the bandit, categorical over the
// four moves for the gridworld (whose full parameter vector concatenates one
// block per cell).
PolicyFamily policy_family_for(const Environment& env, Chart chart = Chart::natural);
std::size_t param_dimension(const Environment& env);
ParamVector initial_theta(const Environment& env, Chart chart, double mu0,
                          double sigma0);

struct Step {
  std::size_t state = 0;
  double action = 0.0;  // real action (bandit) or category index (gridworld)
  double reward = 0.0;
};

struct Trajectory {
  std::vector<Step> steps;
  // d log pi / d theta at each step, full parameter length.
  std::vector<ParamVector> scores;
  std::uint64_t seed = 0;
};

Trajectory rollout(const Environment& env, const PolicyFamily& family,
                   const ParamVector& theta, std::uint64_t seed);

// Mean over trajectories of sum_t gamma^t r_t.
double estimate_objective(const std::vector<Trajectory>& trajectories, double gamma);

enum class Baseline { none, mean_return };

// Reward-to-go REINFORCE estimate: mean over trajectories of
// sum_t (G_t - b) * score_t, with G_t the discounted reward-to-go from t and
// b either 0 or the batch mean return.
ParamVector reinforce_gradient(const std::vector<Trajectory>& trajectories,
                               double gamma, Baseline baseline);

}  // namespace npg
