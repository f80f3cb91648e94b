#pragma once

#include "cdpr/dynamics.hpp"
#include "cdpr/geometry.hpp"
#include "cdpr/rng.hpp"

#include <Eigen/Dense>
#include <cstdint>

namespace cdpr {

// Observation layout: [position(3), velocity(3), target position(3)] plus
// [desired velocity(3)] when target velocity is enabled -> 9 or 12 dims.
using Observation = Eigen::VectorXd;

enum class ActionMode { kContinuous, kDiscrete };

struct ActionSpec {
    ActionMode mode = ActionMode::kContinuous;
    int levels = 5; // per cable, discrete mode only

    int dim() const { return 4; }
};

struct RewardConfig {
    double w_improve = 50.0;
    double w_prox = 5.0;
    double norm_distance = 4.858044874226668; // m, frame diagonal of the default geometry
};

enum class StartSampling { kUniform, kNearTarget };

struct EpisodeConfig {
    int max_steps = 200;
    double success_radius = 0.05;   // m
    StartSampling start_sampling = StartSampling::kUniform;
    double near_target_radius = 0.2; // m, used by kNearTarget
    bool include_target_velocity = false;
    std::uint64_t rng_seed = 0;
};

// r = w_improve * (d_prev - d_curr) + w_prox * (1 - min(d_curr / norm_distance, 1)).
double reward(const RewardConfig& cfg, double d_prev, double d_curr);

// Continuous: t_i = (a_i + 1) / 2 * max_tension for a_i in [-1, 1].
// Discrete: t_i = level_i / (levels - 1) * max_tension for level_i in [0, levels).
CableTensions action_to_tensions(const ActionSpec& spec, const Eigen::VectorXd& action,
                                 double max_tension);

// Stage s samples starts within radius 0.2 * (1 + s) of the target, capped at
// the workspace diagonal (at which point sampling is uniform over the box).
EpisodeConfig curriculum_reset_distribution(int stage, const RobotGeometry& geom,
                                            const EpisodeConfig& base);

struct StepResult {
    Observation observation;
    double reward = 0.0;
    bool terminated = false;
    bool truncated = false;
};

// Episodic reach environment: every episode samples a start and a target in
// the workspace, zeroes the velocity, and runs until the end effector is
// within success_radius of the target or max_steps elapse. Single-owner
// state machine; not for concurrent use.
class CdprEnv {
public:
    CdprEnv(RobotGeometry geom, DynamicsParams params, EpisodeConfig episode,
            RewardConfig reward_cfg, ActionSpec action_spec);

    Observation reset();
    // Deterministic variant for tests and tracking: no sampling involved.
    Observation reset_to(const Vec3& start, const Vec3& target);

    StepResult step(const Eigen::VectorXd& action);

    int observation_dim() const { return episode_.include_target_velocity ? 12 : 9; }
    const EndEffectorState& state() const { return state_; }
    const Vec3& target() const { return target_; }
    double target_distance() const { return (state_.position - target_).norm(); }
    int steps_taken() const { return steps_; }

    const RobotGeometry& geometry() const { return geom_; }
    const DynamicsParams& dynamics_params() const { return params_; }
    const EpisodeConfig& episode_config() const { return episode_; }
    const RewardConfig& reward_config() const { return reward_cfg_; }
    const ActionSpec& action_spec() const { return action_spec_; }

    void set_episode_config(const EpisodeConfig& episode) { episode_ = episode; }

private:
    Vec3 sample_in_workspace();
    Vec3 sample_near(const Vec3& center, double radius);
    Observation observe() const;

    RobotGeometry geom_;
    DynamicsParams params_;
    EpisodeConfig episode_;
    RewardConfig reward_cfg_;
    ActionSpec action_spec_;

    Rng rng_;
    EndEffectorState state_;
    Vec3 target_ = Vec3::Zero();
    double prev_distance_ = 0.0;
    int steps_ = 0;
    bool ready_ = false;
};

} // namespace cdpr
