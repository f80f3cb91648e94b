#pragma once

#include "cdpr/rng.hpp"

#include <Eigen/Dense>

namespace cdpr {

// ---------------------------------------------------------------------------
// Squashed diagonal Gaussian over actions in (-1, 1)^n.
//
// A pre-squash variable u ~ N(mean, diag(sigma^2)) is mapped through
// a = tanh(u). The density picks up the log-determinant of the squash:
//   log p(a) = sum_i [ log N(u_i; mu_i, sigma_i) - log(1 - tanh(u_i)^2) ]
// with the stable identity log(1 - tanh(u)^2) = 2 (log 2 - u - softplus(-2u)).
// KL divergence and Fisher information are those of the pre-squash Gaussians:
// tanh is a fixed diffeomorphism applied to both distributions.
// ---------------------------------------------------------------------------

inline constexpr double kLogStdMin = -5.0;
inline constexpr double kLogStdMax = 2.0;

// log_std entries are clamped to [kLogStdMin, kLogStdMax] wherever used.
Eigen::VectorXd clamp_log_std(const Eigen::VectorXd& log_std);

// Pre-squash sample u = mean + sigma * xi; action is tanh(u).
Eigen::VectorXd gaussian_sample_pre_squash(const Eigen::VectorXd& mean,
                                           const Eigen::VectorXd& log_std, Rng& rng);

// Log-density of action tanh(u), parameterized by the pre-squash value.
double gaussian_log_prob_pre_squash(const Eigen::VectorXd& mean,
                                    const Eigen::VectorXd& log_std,
                                    const Eigen::VectorXd& u);

// Log-density from the squashed action itself (u recovered by atanh).
// Throws ActionOutOfSupport for components outside [-1, 1].
double gaussian_log_prob(const Eigen::VectorXd& mean, const Eigen::VectorXd& log_std,
                         const Eigen::VectorXd& action);

struct GaussianLogProbGrad {
    Eigen::VectorXd d_mean;
    Eigen::VectorXd d_log_std;
};
GaussianLogProbGrad gaussian_log_prob_grad(const Eigen::VectorXd& mean,
                                           const Eigen::VectorXd& log_std,
                                           const Eigen::VectorXd& u);

// KL(p0 || p1) between diagonal Gaussians (equals the squashed KL).
double gaussian_kl(const Eigen::VectorXd& mean0, const Eigen::VectorXd& log_std0,
                   const Eigen::VectorXd& mean1, const Eigen::VectorXd& log_std1);

// Entropy of the pre-squash Gaussian (used as the PPO entropy bonus).
double gaussian_entropy(const Eigen::VectorXd& log_std);

// ---------------------------------------------------------------------------
// Factored categorical: one independent softmax of `levels` logits per cable.
// Logits are concatenated group-major: [group0 levels..., group1 levels...].
// Actions are per-group level indices.
// ---------------------------------------------------------------------------

Eigen::VectorXd softmax(const Eigen::VectorXd& logits);

Eigen::Vector4i categorical_sample(const Eigen::VectorXd& logits, int levels, Rng& rng);

// Sum of per-group log-probabilities. Throws ActionOutOfSupport on an index
// outside [0, levels).
double categorical_log_prob(const Eigen::VectorXd& logits, int levels,
                            const Eigen::Vector4i& levels_action);

// d log p / d logits: per group, onehot(action) - softmax(logits).
Eigen::VectorXd categorical_log_prob_grad(const Eigen::VectorXd& logits, int levels,
                                          const Eigen::Vector4i& levels_action);

double categorical_kl(const Eigen::VectorXd& logits0, const Eigen::VectorXd& logits1,
                      int levels);

double categorical_entropy(const Eigen::VectorXd& logits, int levels);

// Fisher-vector product in logit space: per group, p .* v - p (p . v).
Eigen::VectorXd categorical_fisher_vec(const Eigen::VectorXd& logits, int levels,
                                       const Eigen::VectorXd& v);

Eigen::Vector4i categorical_argmax(const Eigen::VectorXd& logits, int levels);

} // namespace cdpr
