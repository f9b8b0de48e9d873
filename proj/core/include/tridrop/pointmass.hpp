#pragma once

#include <functional>

#include "tridrop/dataset.hpp"
#include "tridrop/rng.hpp"

namespace tridrop {

// Deterministic 1-D point-mass regulation task: drive position and velocity
// to zero under a bounded acceleration command. Serves as the built-in
// control benchmark for policy distillation.
struct EnvParams {
    double dt = 0.05;
    std::size_t horizon = 200;
    double action_limit = 1.0;
    double start_pos_range = 2.0;  // x0 ~ U(-range, range)
    double start_vel_range = 1.0;  // v0 ~ U(-range, range)
    double pos_cost = 1.0;
    double vel_cost = 0.1;
};

struct EnvState {
    double x = 0.0;
    double v = 0.0;
};

// Semi-explicit Euler with the action clamped to [-limit, limit]:
// x' = x + dt*v, v' = v + dt*clamp(a).
EnvState env_step(EnvState s, double action, const EnvParams& p = {});

// Proportional-derivative regulator, clamp(-1.0*x - 0.8*v, -1, 1). Stateless;
// stabilizes every start in the start distribution.
double expert_action(EnvState s);

using Policy = std::function<double(EnvState)>;

struct Rollout {
    std::vector<EnvState> states;   // s_0 .. s_{H-1}
    std::vector<double> actions;    // action taken at each state
    double cost = 0.0;              // sum over steps of (x^2 + 0.1 v^2) * dt
};

Rollout run_episode(const Policy& policy, EnvState start, const EnvParams& p = {});

EnvState sample_start(Rng& rng, const EnvParams& p = {});

// Behavior-cloning data: seeded expert episodes in which, with probability
// noise_prob, a uniform random action is *executed* to broaden state
// coverage while the *recorded* target stays the expert action for that
// state. Pairs are pooled across episodes, then uniformly down-sampled to n.
// Inputs are (x, v) rows; targets are the scalar expert action.
Dataset collect_imitation_dataset(std::size_t n = 100000, double noise_prob = 0.1,
                                  std::uint64_t seed = 1, const EnvParams& p = {});

struct PerfReport {
    double mean_cost = 0.0;
    double expert_mean_cost = 0.0;
    // expert mean cost / policy mean cost; 1.0 is expert parity, higher is
    // better.
    double normalized_score = 0.0;
    std::size_t episodes = 0;
};

// Runs `episodes` seeded episodes. Episode k starts from fork(seed, k), so
// every policy evaluated with the same seed sees identical start states;
// width sweeps are paired comparisons. A non-finite action raises
// NumericError naming the episode and step.
PerfReport evaluate_policy(const Policy& policy, std::size_t episodes = 100,
                           std::uint64_t seed = 1, const EnvParams& p = {});

struct MinWidthResult {
    std::size_t width = 0;
    // False when no width reached the threshold and `width` is the full width.
    bool satisfied = false;
};

// Smallest width whose normalized score is >= 0.9. scores_by_width[k-1]
// holds the score at width k.
MinWidthResult min_width_at_90(const std::vector<double>& scores_by_width);

}  // namespace tridrop
