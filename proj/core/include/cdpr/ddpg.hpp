#pragma once

#include "cdpr/adam.hpp"
#include "cdpr/mlp.hpp"
#include "cdpr/normalizer.hpp"
#include "cdpr/rng.hpp"

#include <Eigen/Dense>
#include <vector>

namespace cdpr {

struct DdpgConfig {
    int buffer_capacity = 100000;
    int batch_size = 64;
    double tau = 0.005; // soft target update rate
    double exploration_sigma = 0.1;
    double actor_lr = 1e-4;
    double critic_lr = 1e-3;
    double gamma = 0.99;
    int warmup_steps = 1000; // uniform random actions before learning starts
    int updates_per_step = 1;
};

struct Transition {
    Eigen::VectorXd obs;      // raw (unnormalized)
    Eigen::VectorXd action;   // 4 reals in [-1, 1]
    double reward = 0.0;
    Eigen::VectorXd next_obs; // raw
    bool terminal = false;    // no bootstrap past this transition
};

// FIFO ring buffer: once full, each insertion evicts the oldest item.
class ReplayBuffer {
public:
    explicit ReplayBuffer(int capacity) : capacity_(capacity) { storage_.reserve(capacity); }

    void push(Transition t);
    int size() const { return static_cast<int>(storage_.size()); }
    int capacity() const { return capacity_; }
    const Transition& at(int i) const { return storage_[i]; } // storage order, not age order
    const Transition& sample(Rng& rng) const;

private:
    int capacity_;
    int head_ = 0; // next slot to overwrite once full
    std::vector<Transition> storage_;
};

// Actor mu(s) = tanh(net(s)) in [-1,1]^4; critic Q(s, a) -> scalar.
// Online and target parameter sets, soft-updated with rate tau.
struct DdpgAgent {
    MlpSpec actor_spec;
    MlpSpec critic_spec;
    Eigen::VectorXd actor_params;
    Eigen::VectorXd critic_params;
    Eigen::VectorXd actor_target;
    Eigen::VectorXd critic_target;
    Normalizer normalizer;
    Adam actor_opt;
    Adam critic_opt;

    DdpgAgent() = default;
    DdpgAgent(int obs_dim, std::vector<int> hidden, Rng& rng);

    Eigen::VectorXd act(const Eigen::VectorXd& obs_raw) const; // deterministic tanh(mu)
    Eigen::VectorXd act_noisy(const Eigen::VectorXd& obs_raw, double sigma, Rng& rng) const;
};

struct DdpgReport {
    double critic_loss = 0.0;
    double actor_objective = 0.0; // mean Q(s, mu(s)) after the step
};

// One gradient step on critic and actor from a sampled minibatch plus a soft
// target update. Throws InsufficientReplay if the buffer holds fewer than
// batch_size transitions.
DdpgReport ddpg_update(DdpgAgent& agent, const ReplayBuffer& replay, const DdpgConfig& cfg,
                       double actor_lr, double critic_lr, Rng& rng);

} // namespace cdpr
