#pragma once

#include "cdpr/adam.hpp"
#include "cdpr/policy.hpp"
#include "cdpr/rollout.hpp"

namespace cdpr {

struct PpoConfig {
    double clip_eps = 0.2;
    int epochs = 10;
    int minibatch = 64;
    double entropy_coeff = 0.01;
    double value_coeff = 0.5;
    double max_grad_norm = 0.5;
};

struct PpoReport {
    double approx_kl = 0.0;     // mean(logp_old - logp_new) after the last epoch
    double clip_fraction = 0.0; // share of samples on the clipped branch
    double value_loss = 0.0;
    double entropy = 0.0;
};

// Chooses the gradient weight on log pi for one sample of the clipped
// surrogate mean[min(ratio A, clip(ratio, 1-eps, 1+eps) A)]: the unclipped
// branch contributes ratio * A, the clipped branch is flat. Exposed for the
// finite-difference gradient check.
double clipped_surrogate_weight(double ratio, double advantage, double clip_eps);

// Several epochs of minibatch Adam ascent on the clipped surrogate plus
// entropy bonus, with the value function regressed toward GAE returns.
// Gradient norms are clipped at max_grad_norm. Throws NonFiniteGradient.
PpoReport ppo_update(Policy& policy, Adam& policy_opt, ValueFunction& value_fn,
                     Adam& value_opt, const RolloutBatch& batch, const GaeConfig& gae_cfg,
                     const PpoConfig& cfg, double lr, Rng& rng);

} // namespace cdpr
