#pragma once

#include "cdpr/env.hpp"
#include "cdpr/mlp.hpp"
#include "cdpr/policy.hpp"
#include "cdpr/rng.hpp"

#include <Eigen/Dense>
#include <vector>

namespace cdpr {

// Value network: observation -> scalar, trained by regression on returns.
struct ValueFunction {
    MlpSpec spec;
    Eigen::VectorXd params;

    ValueFunction() = default;
    ValueFunction(int obs_dim, std::vector<int> hidden, Rng& rng);
    double value(const Eigen::VectorXd& obs_norm) const;
};

// One on-policy collection phase. Parallel sequences, one entry per step.
struct RolloutBatch {
    std::vector<Eigen::VectorXd> obs_norm; // net inputs at behavior time
    std::vector<Eigen::VectorXd> stored_actions; // pre-squash u or level indices
    std::vector<Eigen::VectorXd> behavior_phi;   // behavior dist params per step
    Eigen::VectorXd behavior_log_std;            // snapshot (continuous head)
    std::vector<double> rewards;
    std::vector<bool> terminal;  // env reached the goal: no bootstrap
    std::vector<bool> boundary;  // episode ended here (terminal or truncation)
    std::vector<double> values;      // V(s_t)
    std::vector<double> next_values; // V(s_{t+1}), bootstrap across boundaries
    std::vector<double> behavior_log_probs;

    // Per-episode stats for episodes that finished inside this batch.
    std::vector<double> episode_rewards;
    std::vector<int> episode_lengths;

    int size() const { return static_cast<int>(rewards.size()); }
};

struct GaeConfig {
    double gamma = 0.99;
    double lam = 0.95;
};

struct GaeResult {
    Eigen::VectorXd advantages; // raw (not standardized)
    Eigen::VectorXd returns;    // advantages + values
};

// Backward GAE recursion:
//   delta_t = r_t + gamma (1 - terminal_t) V(s_{t+1}) - V(s_t)
//   A_t = delta_t + gamma lam (1 - boundary_t) A_{t+1}
// Throws EmptyBatch on an empty batch.
GaeResult gae_advantages(const RolloutBatch& batch, const GaeConfig& cfg);

// Standardize to zero mean / unit variance (done before policy updates).
Eigen::VectorXd standardize(const Eigen::VectorXd& x);

// Runs the environment under the sampling policy until n_steps transitions
// are collected, resetting on termination/truncation. Records behavior
// log-probs, distribution parameters, and value estimates.
RolloutBatch collect_rollouts(CdprEnv& env, Policy& policy, const ValueFunction& value_fn,
                              int n_steps, Rng& rng, bool update_normalizer = true);

} // namespace cdpr
