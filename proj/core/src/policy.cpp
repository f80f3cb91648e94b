#include "cdpr/policy.hpp"

#include "cdpr/errors.hpp"

#include <cmath>

namespace cdpr {

Eigen::VectorXd init_mlp_params(const MlpSpec& spec, Rng& rng, double final_layer_scale) {
    Eigen::VectorXd params = Eigen::VectorXd::Zero(spec.param_count());
    const auto shapes = spec.layer_shapes();
    int offset = 0;
    for (size_t k = 0; k < shapes.size(); ++k) {
        const auto [out, in] = shapes[k];
        const double scale = std::sqrt(6.0 / (in + out)) *
                             (k + 1 == shapes.size() ? final_layer_scale : 1.0);
        for (int i = 0; i < out * in; ++i) {
            params[offset + i] = rng.uniform(-scale, scale);
        }
        offset += out * in + out; // biases stay zero
    }
    return params;
}

Policy::Policy(int obs_dim, ActionSpec action, std::vector<int> hidden, Rng& init_rng)
    : action_(action), normalizer_(obs_dim) {
    net_spec_.input_dim = obs_dim;
    net_spec_.hidden = std::move(hidden);
    net_spec_.output_dim = dist_dim();

    const Eigen::VectorXd mlp = init_mlp_params(net_spec_, init_rng, 0.01);
    if (action_.mode == ActionMode::kContinuous) {
        params_.resize(mlp.size() + 4);
        params_.head(mlp.size()) = mlp;
        params_.tail(4).setConstant(-0.5); // initial log_std
    } else {
        params_ = mlp;
    }
}

int Policy::dist_dim() const {
    return action_.mode == ActionMode::kContinuous ? 4 : 4 * action_.levels;
}

Eigen::VectorXd Policy::log_std() const {
    return clamp_log_std(params_.tail(4));
}

Eigen::VectorXd Policy::dist_params(const Eigen::VectorXd& obs_norm, MlpCache* cache) const {
    return mlp_forward(net_spec_, params_.head(net_spec_.param_count()), obs_norm, cache);
}

Policy::ActionSample Policy::act_sample(const Eigen::VectorXd& obs_raw, Rng& rng,
                                        bool update_normalizer) {
    if (update_normalizer) normalizer_.update(obs_raw);
    ActionSample s;
    s.obs_norm = normalizer_.normalize(obs_raw);
    s.phi = dist_params(s.obs_norm);
    if (action_.mode == ActionMode::kContinuous) {
        const Eigen::VectorXd ls = params_.tail(4);
        s.stored = gaussian_sample_pre_squash(s.phi, ls, rng);
        s.action_env = s.stored.array().tanh();
        s.log_prob = gaussian_log_prob_pre_squash(s.phi, ls, s.stored);
    } else {
        const Eigen::Vector4i levels = categorical_sample(s.phi, action_.levels, rng);
        s.stored = levels.cast<double>();
        s.action_env = s.stored;
        s.log_prob = categorical_log_prob(s.phi, action_.levels, levels);
    }
    return s;
}

Eigen::VectorXd Policy::act_deterministic(const Eigen::VectorXd& obs_raw) const {
    const Eigen::VectorXd phi = dist_params(normalizer_.normalize(obs_raw));
    if (action_.mode == ActionMode::kContinuous) {
        return phi.array().tanh();
    }
    return categorical_argmax(phi, action_.levels).cast<double>();
}

double Policy::log_prob_stored(const Eigen::VectorXd& phi, const Eigen::VectorXd& stored) const {
    if (action_.mode == ActionMode::kContinuous) {
        return gaussian_log_prob_pre_squash(phi, params_.tail(4), stored);
    }
    return categorical_log_prob(phi, action_.levels, stored.cast<int>());
}

Policy::LogProbGrad Policy::log_prob_grad_stored(const Eigen::VectorXd& phi,
                                                 const Eigen::VectorXd& stored) const {
    LogProbGrad out;
    if (action_.mode == ActionMode::kContinuous) {
        const GaussianLogProbGrad g = gaussian_log_prob_grad(phi, params_.tail(4), stored);
        out.d_phi = g.d_mean;
        out.d_log_std = g.d_log_std;
    } else {
        out.d_phi = categorical_log_prob_grad(phi, action_.levels, stored.cast<int>());
    }
    return out;
}

double Policy::kl(const Eigen::VectorXd& phi_old, const Eigen::VectorXd& old_log_std,
                  const Eigen::VectorXd& phi_new) const {
    if (action_.mode == ActionMode::kContinuous) {
        return gaussian_kl(phi_old, old_log_std, phi_new, params_.tail(4));
    }
    return categorical_kl(phi_old, phi_new, action_.levels);
}

double Policy::entropy(const Eigen::VectorXd& phi) const {
    if (action_.mode == ActionMode::kContinuous) {
        return gaussian_entropy(params_.tail(4));
    }
    return categorical_entropy(phi, action_.levels);
}

Eigen::VectorXd Policy::fisher_weight_phi(const Eigen::VectorXd& phi,
                                          const Eigen::VectorXd& d_phi) const {
    if (action_.mode == ActionMode::kContinuous) {
        const Eigen::VectorXd ls = log_std();
        Eigen::VectorXd w(4);
        for (int i = 0; i < 4; ++i) {
            const double sigma = std::exp(ls[i]);
            w[i] = d_phi[i] / (sigma * sigma);
        }
        return w;
    }
    return categorical_fisher_vec(phi, action_.levels, d_phi);
}

void Policy::expand_observation(int new_obs_dim) {
    if (new_obs_dim == obs_dim()) return;
    if (new_obs_dim < obs_dim()) throw DimensionMismatch("cannot shrink observation space");

    MlpSpec new_spec = net_spec_;
    new_spec.input_dim = new_obs_dim;

    Eigen::VectorXd new_params = Eigen::VectorXd::Zero(
        new_spec.param_count() + (action_.mode == ActionMode::kContinuous ? 4 : 0));

    // First layer gains zero columns for the new inputs; everything after the
    // first layer's parameters is copied verbatim.
    const int out0 = net_spec_.layer_shapes()[0].first;
    const int old_in = net_spec_.input_dim;
    for (int r = 0; r < out0; ++r) {
        for (int c = 0; c < old_in; ++c) {
            new_params[r * new_obs_dim + c] = params_[r * old_in + c];
        }
    }
    const int old_rest = static_cast<int>(params_.size()) - out0 * old_in;
    new_params.tail(old_rest) = params_.tail(old_rest);

    net_spec_ = new_spec;
    params_ = std::move(new_params);
    normalizer_.expand(new_obs_dim);
}

Policy Policy::assemble(int obs_dim, ActionSpec action, std::vector<int> hidden,
                        Eigen::VectorXd params, Normalizer normalizer) {
    Policy p;
    p.action_ = action;
    p.net_spec_.input_dim = obs_dim;
    p.net_spec_.hidden = std::move(hidden);
    p.net_spec_.output_dim = p.dist_dim();
    const int expected =
        p.net_spec_.param_count() + (action.mode == ActionMode::kContinuous ? 4 : 0);
    if (params.size() != expected) {
        throw DimensionMismatch("policy parameter count " + std::to_string(params.size()) +
                                " does not match architecture (expected " +
                                std::to_string(expected) + ")");
    }
    if (normalizer.dim() != obs_dim) throw DimensionMismatch("normalizer dim mismatch");
    p.params_ = std::move(params);
    p.normalizer_ = std::move(normalizer);
    return p;
}

} // namespace cdpr
