#pragma once

#include "cdpr/adam.hpp"
#include "cdpr/policy.hpp"
#include "cdpr/rollout.hpp"

#include <Eigen/Dense>
#include <functional>

namespace cdpr {

struct TrpoConfig {
    double max_kl = 0.01;       // trust-region radius (mean KL)
    int cg_iters = 10;
    double cg_damping = 0.1;
    double backtrack_coeff = 0.8;
    int backtrack_iters = 10;
    double value_lr = 1e-3;
    int value_epochs = 5;
    int value_minibatch = 64;
};

struct TrpoReport {
    bool accepted = false;
    double kl = 0.0;             // measured KL of the accepted step
    double surrogate_gain = 0.0; // L(theta_new) - L(theta_old)
    double grad_norm = 0.0;
    int backtracks = 0;          // line-search shrinks before acceptance
    double value_loss = 0.0;     // mean squared error after the value fit
};

// Solves A x = b for symmetric positive definite A given only matrix-vector
// products, starting from x = 0.
Eigen::VectorXd conjugate_gradient(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& matvec,
                                   const Eigen::VectorXd& b, int iters, double tol = 1e-10);

// One trust-region policy update on a batch collected under the current
// policy snapshot. The step direction solves (F + damping I) x = g by
// conjugate gradient with exact Fisher-vector products; the full step is
// scaled to the KL radius and backtracked until the surrogate improves and
// the measured KL stays within max_kl, otherwise the update is rejected and
// the parameters stay bitwise unchanged. The value function is fitted to the
// GAE returns by minibatch Adam. Throws NonFiniteGradient if the policy
// gradient is not finite (parameters unchanged).
TrpoReport trpo_update(Policy& policy, ValueFunction& value_fn, Adam& value_opt,
                       const RolloutBatch& batch, const GaeConfig& gae_cfg,
                       const TrpoConfig& cfg, double value_lr, Rng& rng);

// Fisher-vector product of the mean KL at the current parameters, with
// damping. Exposed for verification against finite differences of the KL.
Eigen::VectorXd trpo_fisher_vec(const Policy& policy, const RolloutBatch& batch,
                                double damping, const Eigen::VectorXd& v);

// Mean KL between the behavior distributions in `batch` and the policy's
// current distributions at the same observations.
double trpo_mean_kl(const Policy& policy, const RolloutBatch& batch);

// Importance-sampled surrogate objective mean[ratio * advantage].
double trpo_surrogate(const Policy& policy, const RolloutBatch& batch,
                      const Eigen::VectorXd& advantages);

// Fits the value function to returns; returns the final mean squared error.
double fit_value_function(ValueFunction& value_fn, Adam& opt,
                          const std::vector<Eigen::VectorXd>& obs,
                          const Eigen::VectorXd& targets, int epochs, int minibatch,
                          double lr, Rng& rng);

} // namespace cdpr
