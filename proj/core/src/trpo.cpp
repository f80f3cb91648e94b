#include "cdpr/trpo.hpp"

#include "cdpr/errors.hpp"

#include <cmath>
#include <numeric>

namespace cdpr {

Eigen::VectorXd conjugate_gradient(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& matvec,
    const Eigen::VectorXd& b, int iters, double tol) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(b.size());
    Eigen::VectorXd r = b; // residual b - A x with x = 0
    Eigen::VectorXd p = b;
    double rs = r.squaredNorm();
    for (int i = 0; i < iters && rs > tol; ++i) {
        const Eigen::VectorXd Ap = matvec(p);
        const double alpha = rs / p.dot(Ap);
        x += alpha * p;
        r -= alpha * Ap;
        const double rs_new = r.squaredNorm();
        p = r + (rs_new / rs) * p;
        rs = rs_new;
    }
    return x;
}

namespace {

// Forward caches at the current parameters for every observation in a batch.
std::vector<MlpCache> forward_all(const Policy& policy, const RolloutBatch& batch) {
    std::vector<MlpCache> caches(batch.size());
    const Eigen::VectorXd mlp_params = policy.params().head(policy.mlp_param_count());
    for (int t = 0; t < batch.size(); ++t) {
        mlp_forward(policy.net_spec(), mlp_params, batch.obs_norm[t], &caches[t]);
    }
    return caches;
}

bool is_continuous(const Policy& policy) {
    return policy.action_spec().mode == ActionMode::kContinuous;
}

} // namespace

Eigen::VectorXd trpo_fisher_vec(const Policy& policy, const RolloutBatch& batch,
                                double damping, const Eigen::VectorXd& v) {
    const int n_mlp = policy.mlp_param_count();
    const Eigen::VectorXd mlp_params = policy.params().head(n_mlp);
    const Eigen::VectorXd v_mlp = v.head(n_mlp);

    Eigen::VectorXd out = Eigen::VectorXd::Zero(v.size());
    MlpCache cache;
    for (int t = 0; t < batch.size(); ++t) {
        const Eigen::VectorXd phi =
            mlp_forward(policy.net_spec(), mlp_params, batch.obs_norm[t], &cache);
        const Eigen::VectorXd d_phi = mlp_jvp(policy.net_spec(), mlp_params, cache, v_mlp);
        const Eigen::VectorXd w = policy.fisher_weight_phi(phi, d_phi);
        const MlpGradients g = mlp_backward(policy.net_spec(), mlp_params, cache, w);
        out.head(n_mlp) += g.param_grad;
    }
    out.head(n_mlp) /= batch.size();

    if (is_continuous(policy)) {
        // Fisher block of the state-independent log_std is 2 I.
        out.tail(4) = 2.0 * v.tail(4);
    }
    return out + damping * v;
}

double trpo_mean_kl(const Policy& policy, const RolloutBatch& batch) {
    double kl = 0.0;
    for (int t = 0; t < batch.size(); ++t) {
        const Eigen::VectorXd phi_new = policy.dist_params(batch.obs_norm[t]);
        kl += policy.kl(batch.behavior_phi[t], batch.behavior_log_std, phi_new);
    }
    return kl / batch.size();
}

double trpo_surrogate(const Policy& policy, const RolloutBatch& batch,
                      const Eigen::VectorXd& advantages) {
    double total = 0.0;
    for (int t = 0; t < batch.size(); ++t) {
        const Eigen::VectorXd phi_new = policy.dist_params(batch.obs_norm[t]);
        const double lp = policy.log_prob_stored(phi_new, batch.stored_actions[t]);
        total += std::exp(lp - batch.behavior_log_probs[t]) * advantages[t];
    }
    return total / batch.size();
}

double fit_value_function(ValueFunction& value_fn, Adam& opt,
                          const std::vector<Eigen::VectorXd>& obs,
                          const Eigen::VectorXd& targets, int epochs, int minibatch,
                          double lr, Rng& rng) {
    const int n = static_cast<int>(obs.size());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);

    for (int epoch = 0; epoch < epochs; ++epoch) {
        // Fisher-Yates with the shared deterministic generator.
        for (int i = n - 1; i > 0; --i) {
            const int j = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(i) + 1));
            std::swap(order[i], order[j]);
        }
        for (int start = 0; start < n; start += minibatch) {
            const int end = std::min(start + minibatch, n);
            Eigen::VectorXd grad = Eigen::VectorXd::Zero(value_fn.params.size());
            MlpCache cache;
            for (int k = start; k < end; ++k) {
                const int idx = order[k];
                const double v =
                    mlp_forward(value_fn.spec, value_fn.params, obs[idx], &cache)[0];
                Eigen::VectorXd gout(1);
                gout[0] = v - targets[idx];
                grad += mlp_backward(value_fn.spec, value_fn.params, cache, gout).param_grad;
            }
            grad /= (end - start);
            opt.step(value_fn.params, grad, lr);
        }
    }

    double mse = 0.0;
    for (int i = 0; i < n; ++i) {
        const double v = value_fn.value(obs[i]);
        mse += (v - targets[i]) * (v - targets[i]);
    }
    return mse / n;
}

TrpoReport trpo_update(Policy& policy, ValueFunction& value_fn, Adam& value_opt,
                       const RolloutBatch& batch, const GaeConfig& gae_cfg,
                       const TrpoConfig& cfg, double value_lr, Rng& rng) {
    if (batch.size() == 0) throw EmptyBatch("trpo update on empty batch");

    const GaeResult gae = gae_advantages(batch, gae_cfg);
    const Eigen::VectorXd adv = standardize(gae.advantages);

    // Policy gradient of the surrogate at theta_old: mean[A * grad log pi].
    const int n_mlp = policy.mlp_param_count();
    const Eigen::VectorXd mlp_params = policy.params().head(n_mlp);
    Eigen::VectorXd g = Eigen::VectorXd::Zero(policy.param_count());
    MlpCache cache;
    for (int t = 0; t < batch.size(); ++t) {
        const Eigen::VectorXd phi =
            mlp_forward(policy.net_spec(), mlp_params, batch.obs_norm[t], &cache);
        const Policy::LogProbGrad lg = policy.log_prob_grad_stored(phi, batch.stored_actions[t]);
        const MlpGradients mg =
            mlp_backward(policy.net_spec(), mlp_params, cache, lg.d_phi * adv[t]);
        g.head(n_mlp) += mg.param_grad;
        if (is_continuous(policy)) g.tail(4) += lg.d_log_std * adv[t];
    }
    g /= batch.size();

    if (!g.allFinite()) {
        throw NonFiniteGradient("trpo policy gradient is not finite");
    }

    TrpoReport report;
    report.grad_norm = g.norm();

    const auto matvec = [&](const Eigen::VectorXd& v) {
        return trpo_fisher_vec(policy, batch, cfg.cg_damping, v);
    };
    const Eigen::VectorXd x = conjugate_gradient(matvec, g, cfg.cg_iters);
    const double xAx = x.dot(matvec(x));

    const Eigen::VectorXd theta_old = policy.params();
    const double surrogate_old = trpo_surrogate(policy, batch, adv);

    if (xAx > 1e-12 && x.allFinite()) {
        const double full_scale = std::sqrt(2.0 * cfg.max_kl / xAx);
        double scale = full_scale;
        for (int j = 0; j < cfg.backtrack_iters; ++j, scale *= cfg.backtrack_coeff) {
            policy.params() = theta_old + scale * x;
            const double surrogate_new = trpo_surrogate(policy, batch, adv);
            const double kl = trpo_mean_kl(policy, batch);
            if (std::isfinite(surrogate_new) && std::isfinite(kl) &&
                surrogate_new > surrogate_old && kl <= cfg.max_kl) {
                report.accepted = true;
                report.kl = kl;
                report.surrogate_gain = surrogate_new - surrogate_old;
                report.backtracks = j;
                break;
            }
        }
    }
    if (!report.accepted) {
        policy.params() = theta_old; // bitwise unchanged on rejection
    }

    report.value_loss = fit_value_function(value_fn, value_opt, batch.obs_norm, gae.returns,
                                           cfg.value_epochs, cfg.value_minibatch, value_lr, rng);
    return report;
}

} // namespace cdpr
