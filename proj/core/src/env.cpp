#include "cdpr/env.hpp"

#include "cdpr/errors.hpp"

#include <algorithm>
#include <cmath>

namespace cdpr {

double reward(const RewardConfig& cfg, double d_prev, double d_curr) {
    const double proximity = 1.0 - std::min(d_curr / cfg.norm_distance, 1.0);
    return cfg.w_improve * (d_prev - d_curr) + cfg.w_prox * proximity;
}

CableTensions action_to_tensions(const ActionSpec& spec, const Eigen::VectorXd& action,
                                 double max_tension) {
    if (action.size() != 4) {
        throw ActionOutOfBounds("expected 4 action components, got " +
                                std::to_string(action.size()));
    }
    CableTensions out;
    if (spec.mode == ActionMode::kContinuous) {
        for (int i = 0; i < 4; ++i) {
            const double a = action[i];
            if (!(a >= -1.0 && a <= 1.0)) {
                throw ActionOutOfBounds("continuous action component " + std::to_string(i) +
                                        " outside [-1, 1]");
            }
            out.t[i] = 0.5 * (a + 1.0) * max_tension;
        }
    } else {
        for (int i = 0; i < 4; ++i) {
            const double a = action[i];
            const int level = static_cast<int>(std::llround(a));
            if (a != static_cast<double>(level) || level < 0 || level >= spec.levels) {
                throw ActionOutOfBounds("discrete level " + std::to_string(a) +
                                        " outside [0, " + std::to_string(spec.levels - 1) + "]");
            }
            out.t[i] = static_cast<double>(level) / (spec.levels - 1) * max_tension;
        }
    }
    return out;
}

EpisodeConfig curriculum_reset_distribution(int stage, const RobotGeometry& geom,
                                            const EpisodeConfig& base) {
    EpisodeConfig cfg = base;
    cfg.start_sampling = StartSampling::kNearTarget;
    cfg.near_target_radius = std::min(0.2 * (1.0 + stage), geom.workspace_diagonal());
    return cfg;
}

CdprEnv::CdprEnv(RobotGeometry geom, DynamicsParams params, EpisodeConfig episode,
                 RewardConfig reward_cfg, ActionSpec action_spec)
    : geom_(std::move(geom)),
      params_(params),
      episode_(episode),
      reward_cfg_(reward_cfg),
      action_spec_(action_spec),
      rng_(episode.rng_seed) {}

Vec3 CdprEnv::sample_in_workspace() {
    Vec3 p;
    for (int k = 0; k < 3; ++k) {
        p[k] = rng_.uniform(geom_.workspace_min[k], geom_.workspace_max[k]);
    }
    return p;
}

Vec3 CdprEnv::sample_near(const Vec3& center, double radius) {
    // Uniform over ball(center, radius) intersected with the workspace box:
    // draw uniformly in the ball, reject outside the box.
    for (int tries = 0; tries < 10000; ++tries) {
        Vec3 dir(rng_.normal(), rng_.normal(), rng_.normal());
        const double n = dir.norm();
        if (n < 1e-12) continue;
        const double r = radius * std::cbrt(rng_.uniform01());
        const Vec3 p = center + dir * (r / n);
        if (workspace_contains(geom_, p)) return p;
    }
    // Unreachable for targets inside the box; clamp as a last resort.
    return center.cwiseMax(geom_.workspace_min).cwiseMin(geom_.workspace_max);
}

Observation CdprEnv::observe() const {
    Observation obs(observation_dim());
    obs.segment<3>(0) = state_.position;
    obs.segment<3>(3) = state_.velocity;
    obs.segment<3>(6) = target_;
    if (episode_.include_target_velocity) {
        obs.segment<3>(9).setZero(); // reach task: target is stationary
    }
    return obs;
}

Observation CdprEnv::reset() {
    target_ = sample_in_workspace();
    state_.position = episode_.start_sampling == StartSampling::kUniform
                          ? sample_in_workspace()
                          : sample_near(target_, episode_.near_target_radius);
    state_.velocity.setZero();
    steps_ = 0;
    prev_distance_ = (state_.position - target_).norm();
    ready_ = true;
    return observe();
}

Observation CdprEnv::reset_to(const Vec3& start, const Vec3& target) {
    target_ = target;
    state_.position = start;
    state_.velocity.setZero();
    steps_ = 0;
    prev_distance_ = (state_.position - target_).norm();
    ready_ = true;
    return observe();
}

StepResult CdprEnv::step(const Eigen::VectorXd& action) {
    if (!ready_) throw StepBeforeReset("step() called before reset()");

    const CableTensions tensions = action_to_tensions(action_spec_, action, params_.max_tension);
    state_ = cdpr::step(geom_, params_, state_, tensions);
    ++steps_;

    const double d_curr = (state_.position - target_).norm();
    StepResult result;
    result.reward = reward(reward_cfg_, prev_distance_, d_curr);
    result.terminated = d_curr <= episode_.success_radius;
    result.truncated = steps_ >= episode_.max_steps && !result.terminated;
    // Both flags coincide only when success lands exactly on the step limit.
    if (d_curr <= episode_.success_radius && steps_ >= episode_.max_steps) {
        result.truncated = true;
    }
    prev_distance_ = d_curr;
    result.observation = observe();
    return result;
}

} // namespace cdpr
