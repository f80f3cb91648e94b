#include "cdpr/ppo.hpp"

#include "cdpr/errors.hpp"
#include "cdpr/heads.hpp"

#include <cmath>
#include <numeric>

namespace cdpr {

double clipped_surrogate_weight(double ratio, double advantage, double clip_eps) {
    const bool clipped_active = (advantage > 0.0 && ratio > 1.0 + clip_eps) ||
                                (advantage < 0.0 && ratio < 1.0 - clip_eps);
    return clipped_active ? 0.0 : ratio * advantage;
}

namespace {

// dH/dlogits of a factored categorical: per group -p_j (ln p_j + H_group).
Eigen::VectorXd categorical_entropy_grad(const Eigen::VectorXd& logits, int levels) {
    Eigen::VectorXd grad(logits.size());
    for (int g = 0; g < 4; ++g) {
        const Eigen::VectorXd p = softmax(logits.segment(g * levels, levels));
        double h = 0.0;
        for (int k = 0; k < levels; ++k) {
            if (p[k] > 0.0) h -= p[k] * std::log(p[k]);
        }
        for (int k = 0; k < levels; ++k) {
            grad[g * levels + k] = p[k] > 0.0 ? -p[k] * (std::log(p[k]) + h) : 0.0;
        }
    }
    return grad;
}

} // namespace

PpoReport ppo_update(Policy& policy, Adam& policy_opt, ValueFunction& value_fn,
                     Adam& value_opt, const RolloutBatch& batch, const GaeConfig& gae_cfg,
                     const PpoConfig& cfg, double lr, Rng& rng) {
    if (batch.size() == 0) throw EmptyBatch("ppo update on empty batch");

    const GaeResult gae = gae_advantages(batch, gae_cfg);
    const Eigen::VectorXd adv = standardize(gae.advantages);

    const bool continuous = policy.action_spec().mode == ActionMode::kContinuous;
    const int n = batch.size();
    const int n_mlp = policy.mlp_param_count();

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);

    PpoReport report;
    long clipped = 0;
    long seen = 0;

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        for (int i = n - 1; i > 0; --i) {
            const int j = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(i) + 1));
            std::swap(order[i], order[j]);
        }
        for (int start = 0; start < n; start += cfg.minibatch) {
            const int end = std::min(start + cfg.minibatch, n);
            const int mb = end - start;

            Eigen::VectorXd policy_grad = Eigen::VectorXd::Zero(policy.param_count());
            Eigen::VectorXd value_grad = Eigen::VectorXd::Zero(value_fn.params.size());
            MlpCache cache;
            const Eigen::VectorXd mlp_params = policy.params().head(n_mlp);

            for (int k = start; k < end; ++k) {
                const int t = order[k];
                const Eigen::VectorXd phi =
                    mlp_forward(policy.net_spec(), mlp_params, batch.obs_norm[t], &cache);
                const double lp = policy.log_prob_stored(phi, batch.stored_actions[t]);
                const double ratio = std::exp(lp - batch.behavior_log_probs[t]);
                const double w = clipped_surrogate_weight(ratio, adv[t], cfg.clip_eps);
                if (w == 0.0 && adv[t] != 0.0) ++clipped;
                ++seen;

                const Policy::LogProbGrad lg =
                    policy.log_prob_grad_stored(phi, batch.stored_actions[t]);
                // Ascent on surrogate + entropy bonus -> descend the negative.
                Eigen::VectorXd d_phi = -w * lg.d_phi;
                if (!continuous) {
                    d_phi -= cfg.entropy_coeff *
                             categorical_entropy_grad(phi, policy.action_spec().levels);
                }
                policy_grad.head(n_mlp) +=
                    mlp_backward(policy.net_spec(), mlp_params, cache, d_phi).param_grad;
                if (continuous) {
                    policy_grad.tail(4) -= w * lg.d_log_std;
                    // Pre-squash Gaussian entropy: dH/dlog_std = 1 inside the clamp.
                    for (int d = 0; d < 4; ++d) {
                        const double ls = policy.params()[n_mlp + d];
                        if (ls > kLogStdMin && ls < kLogStdMax) {
                            policy_grad[n_mlp + d] -= cfg.entropy_coeff;
                        }
                    }
                }

                const double v = mlp_forward(value_fn.spec, value_fn.params,
                                             batch.obs_norm[t], &cache)[0];
                Eigen::VectorXd gout(1);
                gout[0] = cfg.value_coeff * 2.0 * (v - gae.returns[t]);
                value_grad += mlp_backward(value_fn.spec, value_fn.params, cache, gout).param_grad;
            }
            policy_grad /= mb;
            value_grad /= mb;
            if (!policy_grad.allFinite() || !value_grad.allFinite()) {
                throw NonFiniteGradient("ppo gradient is not finite");
            }
            clip_grad_norm(policy_grad, cfg.max_grad_norm);
            clip_grad_norm(value_grad, cfg.max_grad_norm);
            policy_opt.step(policy.params(), policy_grad, lr);
            value_opt.step(value_fn.params, value_grad, lr);
        }
    }

    // Post-update diagnostics.
    double approx_kl = 0.0;
    double value_loss = 0.0;
    double entropy = 0.0;
    for (int t = 0; t < n; ++t) {
        const Eigen::VectorXd phi = policy.dist_params(batch.obs_norm[t]);
        approx_kl += batch.behavior_log_probs[t] - policy.log_prob_stored(phi, batch.stored_actions[t]);
        entropy += policy.entropy(phi);
        const double v = value_fn.value(batch.obs_norm[t]);
        value_loss += (v - gae.returns[t]) * (v - gae.returns[t]);
    }
    report.approx_kl = approx_kl / n;
    report.entropy = entropy / n;
    report.value_loss = value_loss / n;
    report.clip_fraction = seen > 0 ? static_cast<double>(clipped) / seen : 0.0;
    return report;
}

} // namespace cdpr
