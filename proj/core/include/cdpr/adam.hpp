#pragma once

#include <Eigen/Dense>
#include <cmath>

namespace cdpr {

// Plain Adam. The learning rate is passed per step so external schedules
// (cosine warmup) can drive it.
class Adam {
public:
    Adam() = default;
    explicit Adam(int dim, double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8)
        : m_(Eigen::VectorXd::Zero(dim)),
          v_(Eigen::VectorXd::Zero(dim)),
          beta1_(beta1),
          beta2_(beta2),
          eps_(eps) {}

    // Applies a gradient-descent step on `params` along `grad`.
    void step(Eigen::VectorXd& params, const Eigen::VectorXd& grad, double lr) {
        ++t_;
        m_ = beta1_ * m_ + (1.0 - beta1_) * grad;
        v_ = beta2_ * v_ + (1.0 - beta2_) * grad.cwiseProduct(grad);
        const double bc1 = 1.0 - std::pow(beta1_, t_);
        const double bc2 = 1.0 - std::pow(beta2_, t_);
        params.array() -=
            lr * (m_.array() / bc1) / ((v_.array() / bc2).sqrt() + eps_);
    }

private:
    Eigen::VectorXd m_;
    Eigen::VectorXd v_;
    double beta1_ = 0.9;
    double beta2_ = 0.999;
    double eps_ = 1e-8;
    long t_ = 0;
};

// Rescales `grad` in place so its Euclidean norm is at most `max_norm`.
inline void clip_grad_norm(Eigen::VectorXd& grad, double max_norm) {
    const double n = grad.norm();
    if (n > max_norm && n > 0.0) grad *= max_norm / n;
}

} // namespace cdpr
