#include "cdpr/rollout.hpp"

#include "cdpr/errors.hpp"

#include <cmath>

namespace cdpr {

ValueFunction::ValueFunction(int obs_dim, std::vector<int> hidden, Rng& rng) {
    spec.input_dim = obs_dim;
    spec.hidden = std::move(hidden);
    spec.output_dim = 1;
    params = init_mlp_params(spec, rng);
}

double ValueFunction::value(const Eigen::VectorXd& obs_norm) const {
    return mlp_forward(spec, params, obs_norm)[0];
}

GaeResult gae_advantages(const RolloutBatch& batch, const GaeConfig& cfg) {
    const int n = batch.size();
    if (n == 0) throw EmptyBatch("gae on empty batch");

    GaeResult out;
    out.advantages.resize(n);
    out.returns.resize(n);

    double next_adv = 0.0;
    for (int t = n - 1; t >= 0; --t) {
        const double not_terminal = batch.terminal[t] ? 0.0 : 1.0;
        const double not_boundary = batch.boundary[t] ? 0.0 : 1.0;
        const double delta =
            batch.rewards[t] + cfg.gamma * not_terminal * batch.next_values[t] - batch.values[t];
        next_adv = delta + cfg.gamma * cfg.lam * not_boundary * next_adv;
        out.advantages[t] = next_adv;
        out.returns[t] = next_adv + batch.values[t];
    }
    return out;
}

Eigen::VectorXd standardize(const Eigen::VectorXd& x) {
    const double mean = x.mean();
    const double var = (x.array() - mean).square().mean();
    const double std = std::sqrt(var);
    if (std < 1e-12) return Eigen::VectorXd::Zero(x.size());
    return (x.array() - mean) / std;
}

RolloutBatch collect_rollouts(CdprEnv& env, Policy& policy, const ValueFunction& value_fn,
                              int n_steps, Rng& rng, bool update_normalizer) {
    RolloutBatch batch;
    batch.obs_norm.reserve(n_steps);
    batch.behavior_log_std =
        policy.action_spec().mode == ActionMode::kContinuous ? policy.log_std() : Eigen::VectorXd();

    Eigen::VectorXd obs_raw = env.reset();
    double episode_reward = 0.0;
    int episode_length = 0;

    for (int t = 0; t < n_steps; ++t) {
        Policy::ActionSample s = policy.act_sample(obs_raw, rng, update_normalizer);
        const StepResult res = env.step(s.action_env);

        batch.obs_norm.push_back(s.obs_norm);
        batch.stored_actions.push_back(s.stored);
        batch.behavior_phi.push_back(s.phi);
        batch.behavior_log_probs.push_back(s.log_prob);
        batch.rewards.push_back(res.reward);
        batch.values.push_back(value_fn.value(s.obs_norm));

        episode_reward += res.reward;
        ++episode_length;

        const bool done = res.terminated || res.truncated;
        batch.terminal.push_back(res.terminated);
        batch.boundary.push_back(done);
        // Bootstrap value of the successor state; for batch tails and
        // truncations this is a fresh evaluation, otherwise it is filled in
        // from the next step's V(s_t) below.
        const Eigen::VectorXd next_norm = policy.normalizer().normalize(res.observation);
        batch.next_values.push_back(done || t + 1 == n_steps ? value_fn.value(next_norm) : 0.0);

        if (done) {
            batch.episode_rewards.push_back(episode_reward);
            batch.episode_lengths.push_back(episode_length);
            episode_reward = 0.0;
            episode_length = 0;
            obs_raw = env.reset();
        } else {
            obs_raw = res.observation;
        }
    }

    // Interior steps reuse the next step's value estimate.
    for (int t = 0; t + 1 < batch.size(); ++t) {
        if (!batch.boundary[t]) batch.next_values[t] = batch.values[t + 1];
    }
    return batch;
}

} // namespace cdpr
