#include "tridrop/pointmass.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tridrop/errors.hpp"

namespace tridrop {

EnvState env_step(EnvState s, double action, const EnvParams& p) {
    const double a = std::clamp(action, -p.action_limit, p.action_limit);
    return {s.x + p.dt * s.v, s.v + p.dt * a};
}

double expert_action(EnvState s) {
    return std::clamp(-1.0 * s.x - 0.8 * s.v, -1.0, 1.0);
}

Rollout run_episode(const Policy& policy, EnvState start, const EnvParams& p) {
    Rollout r;
    r.states.reserve(p.horizon);
    r.actions.reserve(p.horizon);
    EnvState s = start;
    for (std::size_t t = 0; t < p.horizon; ++t) {
        const double a = policy(s);
        r.states.push_back(s);
        r.actions.push_back(a);
        r.cost += (p.pos_cost * s.x * s.x + p.vel_cost * s.v * s.v) * p.dt;
        s = env_step(s, a, p);
    }
    return r;
}

EnvState sample_start(Rng& rng, const EnvParams& p) {
    return {rng.uniform(-p.start_pos_range, p.start_pos_range),
            rng.uniform(-p.start_vel_range, p.start_vel_range)};
}

Dataset collect_imitation_dataset(std::size_t n, double noise_prob, std::uint64_t seed,
                                  const EnvParams& p) {
    if (n < 1) {
        throw ConfigError("collect_imitation_dataset: need n >= 1");
    }
    // Pool ~25% more pairs than requested, then down-sample uniformly.
    const std::size_t pool_target = n + (n + 3) / 4;
    const Rng base(seed);
    std::vector<EnvState> states;
    std::vector<double> targets;
    states.reserve(pool_target);
    targets.reserve(pool_target);
    for (std::size_t episode = 0; states.size() < pool_target; ++episode) {
        Rng rng = base.fork(episode);
        EnvState s = sample_start(rng, p);
        for (std::size_t t = 0; t < p.horizon && states.size() < pool_target; ++t) {
            const double expert = expert_action(s);
            states.push_back(s);
            targets.push_back(expert);
            const bool explore = rng.bernoulli(noise_prob);
            const double executed = explore ? rng.uniform(-1.0, 1.0) : expert;
            s = env_step(s, executed, p);
        }
    }
    std::vector<std::size_t> order(states.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng pick = base.fork(0x646f776eull);
    pick.shuffle(order);

    Dataset ds;
    ds.name = "pointmass-imitation";
    ds.provenance = "seed=" + std::to_string(seed) + " noise_prob=" + std::to_string(noise_prob) +
                    " n=" + std::to_string(n);
    ds.inputs = Matrix(n, 2);
    ds.targets = Matrix(n, 1);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& s = states[order[i]];
        ds.inputs(i, 0) = static_cast<float>(s.x);
        ds.inputs(i, 1) = static_cast<float>(s.v);
        ds.targets(i, 0) = static_cast<float>(targets[order[i]]);
    }
    return ds;
}

PerfReport evaluate_policy(const Policy& policy, std::size_t episodes, std::uint64_t seed,
                           const EnvParams& p) {
    if (episodes < 1) {
        throw ConfigError("evaluate_policy: need episodes >= 1");
    }
    const Rng base(seed);
    PerfReport report;
    report.episodes = episodes;
    for (std::size_t e = 0; e < episodes; ++e) {
        Rng rng = base.fork(e);
        const EnvState start = sample_start(rng, p);
        EnvState s = start;
        double cost = 0.0;
        for (std::size_t t = 0; t < p.horizon; ++t) {
            const double a = policy(s);
            if (!std::isfinite(a)) {
                throw NumericError("policy produced a non-finite action at episode " +
                                   std::to_string(e) + ", step " + std::to_string(t));
            }
            cost += (p.pos_cost * s.x * s.x + p.vel_cost * s.v * s.v) * p.dt;
            s = env_step(s, a, p);
        }
        report.mean_cost += cost;
        report.expert_mean_cost += run_episode(expert_action, start, p).cost;
    }
    report.mean_cost /= static_cast<double>(episodes);
    report.expert_mean_cost /= static_cast<double>(episodes);
    report.normalized_score = report.expert_mean_cost / report.mean_cost;
    return report;
}

MinWidthResult min_width_at_90(const std::vector<double>& scores_by_width) {
    if (scores_by_width.empty()) {
        throw ConfigError("min_width_at_90: no scores");
    }
    for (std::size_t k = 1; k <= scores_by_width.size(); ++k) {
        if (scores_by_width[k - 1] >= 0.9) {
            return {k, true};
        }
    }
    return {scores_by_width.size(), false};
}

}  // namespace tridrop
