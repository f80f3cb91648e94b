#pragma once

#include "cdpr/env.hpp"
#include "cdpr/heads.hpp"
#include "cdpr/mlp.hpp"
#include "cdpr/normalizer.hpp"
#include "cdpr/rng.hpp"

#include <Eigen/Dense>
#include <vector>

namespace cdpr {

// Xavier-uniform weights, zero biases; the final layer is scaled down so a
// fresh policy starts close to the distribution's center.
Eigen::VectorXd init_mlp_params(const MlpSpec& spec, Rng& rng, double final_layer_scale = 1.0);

// Policy network plus distribution head plus observation normalizer.
//
// Flat parameter layout: [mlp parameters | log_std (4, continuous only)].
// Distribution parameters phi are the network output: the action mean for the
// continuous head, the 4 x levels logits for the discrete head.
class Policy {
public:
    Policy() = default;
    Policy(int obs_dim, ActionSpec action, std::vector<int> hidden, Rng& init_rng);

    int obs_dim() const { return net_spec_.input_dim; }
    const ActionSpec& action_spec() const { return action_; }
    const MlpSpec& net_spec() const { return net_spec_; }

    int param_count() const { return static_cast<int>(params_.size()); }
    int mlp_param_count() const { return net_spec_.param_count(); }
    Eigen::VectorXd& params() { return params_; }
    const Eigen::VectorXd& params() const { return params_; }
    Eigen::VectorXd log_std() const; // continuous only (clamped view copy)

    Normalizer& normalizer() { return normalizer_; }
    const Normalizer& normalizer() const { return normalizer_; }

    // Network output for a normalized observation.
    Eigen::VectorXd dist_params(const Eigen::VectorXd& obs_norm, MlpCache* cache = nullptr) const;

    struct ActionSample {
        Eigen::VectorXd action_env; // 4 reals in [-1,1], or 4 level indices as reals
        Eigen::VectorXd stored;     // pre-squash u (continuous) or levels (discrete)
        double log_prob = 0.0;
        Eigen::VectorXd obs_norm;   // exact net input used
        Eigen::VectorXd phi;        // behavior distribution parameters
    };
    ActionSample act_sample(const Eigen::VectorXd& obs_raw, Rng& rng, bool update_normalizer);

    // Mean action (continuous) or argmax levels (discrete); normalizer frozen.
    Eigen::VectorXd act_deterministic(const Eigen::VectorXd& obs_raw) const;

    // Log-likelihood of a stored action under distribution parameters phi.
    double log_prob_stored(const Eigen::VectorXd& phi, const Eigen::VectorXd& stored) const;

    // d log pi / d phi plus, for the continuous head, d log pi / d log_std.
    struct LogProbGrad {
        Eigen::VectorXd d_phi;
        Eigen::VectorXd d_log_std; // empty for discrete
    };
    LogProbGrad log_prob_grad_stored(const Eigen::VectorXd& phi,
                                     const Eigen::VectorXd& stored) const;

    // KL(old || new) between per-state distributions. old_log_std is the
    // behavior-time log_std snapshot (ignored for discrete).
    double kl(const Eigen::VectorXd& phi_old, const Eigen::VectorXd& old_log_std,
              const Eigen::VectorXd& phi_new) const;

    double entropy(const Eigen::VectorXd& phi) const;

    // Fisher-weighted tangent in phi space (plus the log_std block for the
    // continuous head), used by trust-region Fisher-vector products.
    Eigen::VectorXd fisher_weight_phi(const Eigen::VectorXd& phi,
                                      const Eigen::VectorXd& d_phi) const;

    // Widen the observation space (e.g. 9 -> 12 when target velocity is
    // added to a pre-trained policy). New first-layer weights are zero, so
    // outputs are unchanged while the new slots read as zero.
    void expand_observation(int new_obs_dim);

    // Rebuild from deserialized pieces.
    static Policy assemble(int obs_dim, ActionSpec action, std::vector<int> hidden,
                           Eigen::VectorXd params, Normalizer normalizer);

private:
    int dist_dim() const;

    ActionSpec action_;
    MlpSpec net_spec_;
    Eigen::VectorXd params_;
    Normalizer normalizer_;
};

} // namespace cdpr
