#include "cdpr/ddpg.hpp"

#include "cdpr/errors.hpp"
#include "cdpr/policy.hpp"

#include <cmath>

namespace cdpr {

void ReplayBuffer::push(Transition t) {
    if (size() < capacity_) {
        storage_.push_back(std::move(t));
    } else {
        storage_[head_] = std::move(t);
        head_ = (head_ + 1) % capacity_;
    }
}

const Transition& ReplayBuffer::sample(Rng& rng) const {
    return storage_[rng.uniform_int(storage_.size())];
}

DdpgAgent::DdpgAgent(int obs_dim, std::vector<int> hidden, Rng& rng)
    : normalizer(obs_dim) {
    actor_spec = MlpSpec{obs_dim, hidden, 4};
    critic_spec = MlpSpec{obs_dim + 4, hidden, 1};
    actor_params = init_mlp_params(actor_spec, rng, 0.01);
    critic_params = init_mlp_params(critic_spec, rng);
    actor_target = actor_params;
    critic_target = critic_params;
    actor_opt = Adam(static_cast<int>(actor_params.size()));
    critic_opt = Adam(static_cast<int>(critic_params.size()));
}

Eigen::VectorXd DdpgAgent::act(const Eigen::VectorXd& obs_raw) const {
    const Eigen::VectorXd obs = normalizer.normalize(obs_raw);
    return mlp_forward(actor_spec, actor_params, obs).array().tanh();
}

Eigen::VectorXd DdpgAgent::act_noisy(const Eigen::VectorXd& obs_raw, double sigma,
                                     Rng& rng) const {
    Eigen::VectorXd a = act(obs_raw);
    for (int i = 0; i < a.size(); ++i) {
        a[i] = std::min(std::max(a[i] + sigma * rng.normal(), -1.0), 1.0);
    }
    return a;
}

namespace {

Eigen::VectorXd critic_input(const Eigen::VectorXd& obs_norm, const Eigen::VectorXd& action) {
    Eigen::VectorXd in(obs_norm.size() + action.size());
    in << obs_norm, action;
    return in;
}

} // namespace

DdpgReport ddpg_update(DdpgAgent& agent, const ReplayBuffer& replay, const DdpgConfig& cfg,
                       double actor_lr, double critic_lr, Rng& rng) {
    if (replay.size() < cfg.batch_size) {
        throw InsufficientReplay("replay holds " + std::to_string(replay.size()) +
                                 " transitions, need " + std::to_string(cfg.batch_size));
    }

    const int mb = cfg.batch_size;
    std::vector<const Transition*> batch(mb);
    for (int k = 0; k < mb; ++k) batch[k] = &replay.sample(rng);

    // Critic regression toward r + gamma (1 - done) Q'(s', mu'(s')).
    Eigen::VectorXd critic_grad = Eigen::VectorXd::Zero(agent.critic_params.size());
    double critic_loss = 0.0;
    MlpCache cache;
    for (const Transition* tr : batch) {
        const Eigen::VectorXd s = agent.normalizer.normalize(tr->obs);
        const Eigen::VectorXd s2 = agent.normalizer.normalize(tr->next_obs);

        const Eigen::VectorXd a2 =
            mlp_forward(agent.actor_spec, agent.actor_target, s2).array().tanh();
        const double q_next =
            mlp_forward(agent.critic_spec, agent.critic_target, critic_input(s2, a2))[0];
        const double y = tr->reward + cfg.gamma * (tr->terminal ? 0.0 : 1.0) * q_next;

        const double q =
            mlp_forward(agent.critic_spec, agent.critic_params, critic_input(s, tr->action), &cache)[0];
        Eigen::VectorXd gout(1);
        gout[0] = 2.0 * (q - y);
        critic_grad += mlp_backward(agent.critic_spec, agent.critic_params, cache, gout).param_grad;
        critic_loss += (q - y) * (q - y);
    }
    critic_grad /= mb;
    critic_loss /= mb;
    if (!critic_grad.allFinite()) throw NonFiniteGradient("ddpg critic gradient is not finite");
    agent.critic_opt.step(agent.critic_params, critic_grad, critic_lr);

    // Actor ascends Q(s, mu(s)): chain dQ/da through the tanh squash.
    Eigen::VectorXd actor_grad = Eigen::VectorXd::Zero(agent.actor_params.size());
    double actor_objective = 0.0;
    MlpCache actor_cache;
    for (const Transition* tr : batch) {
        const Eigen::VectorXd s = agent.normalizer.normalize(tr->obs);
        const Eigen::VectorXd pre =
            mlp_forward(agent.actor_spec, agent.actor_params, s, &actor_cache);
        const Eigen::VectorXd a = pre.array().tanh();

        const double q =
            mlp_forward(agent.critic_spec, agent.critic_params, critic_input(s, a), &cache)[0];
        actor_objective += q;
        Eigen::VectorXd gout(1);
        gout[0] = 1.0;
        const Eigen::VectorXd dq_din =
            mlp_backward(agent.critic_spec, agent.critic_params, cache, gout).input_grad;
        const Eigen::VectorXd dq_da = dq_din.tail(4);
        const Eigen::VectorXd d_pre =
            (dq_da.array() * (1.0 - a.array().square())).matrix();
        // Descend the negative objective.
        actor_grad +=
            mlp_backward(agent.actor_spec, agent.actor_params, actor_cache, -d_pre).param_grad;
    }
    actor_grad /= mb;
    actor_objective /= mb;
    if (!actor_grad.allFinite()) throw NonFiniteGradient("ddpg actor gradient is not finite");
    agent.actor_opt.step(agent.actor_params, actor_grad, actor_lr);

    // Soft target updates: theta' <- tau theta + (1 - tau) theta'.
    agent.actor_target = cfg.tau * agent.actor_params + (1.0 - cfg.tau) * agent.actor_target;
    agent.critic_target = cfg.tau * agent.critic_params + (1.0 - cfg.tau) * agent.critic_target;

    return {critic_loss, actor_objective};
}

} // namespace cdpr
