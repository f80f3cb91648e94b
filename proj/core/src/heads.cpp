#include "cdpr/heads.hpp"

#include "cdpr/errors.hpp"

#include <cmath>

namespace cdpr {

namespace {

constexpr double kHalfLog2Pi = 0.9189385332046727; // 0.5 * ln(2 pi)

double softplus(double x) {
    // log(1 + e^x) without overflow.
    return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

// log(1 - tanh(u)^2), stable for large |u|.
double log_one_minus_tanh_sq(double u) {
    return 2.0 * (std::log(2.0) - u - softplus(-2.0 * u));
}

} // namespace

Eigen::VectorXd clamp_log_std(const Eigen::VectorXd& log_std) {
    return log_std.cwiseMax(kLogStdMin).cwiseMin(kLogStdMax);
}

Eigen::VectorXd gaussian_sample_pre_squash(const Eigen::VectorXd& mean,
                                           const Eigen::VectorXd& log_std, Rng& rng) {
    const Eigen::VectorXd ls = clamp_log_std(log_std);
    Eigen::VectorXd u(mean.size());
    for (int i = 0; i < mean.size(); ++i) {
        u[i] = mean[i] + std::exp(ls[i]) * rng.normal();
    }
    return u;
}

double gaussian_log_prob_pre_squash(const Eigen::VectorXd& mean,
                                    const Eigen::VectorXd& log_std,
                                    const Eigen::VectorXd& u) {
    if (u.size() != mean.size()) throw DimensionMismatch("pre-squash sample dim");
    const Eigen::VectorXd ls = clamp_log_std(log_std);
    double lp = 0.0;
    for (int i = 0; i < mean.size(); ++i) {
        const double sigma = std::exp(ls[i]);
        const double z = (u[i] - mean[i]) / sigma;
        lp += -0.5 * z * z - ls[i] - kHalfLog2Pi;
        lp -= log_one_minus_tanh_sq(u[i]);
    }
    return lp;
}

double gaussian_log_prob(const Eigen::VectorXd& mean, const Eigen::VectorXd& log_std,
                         const Eigen::VectorXd& action) {
    if (action.size() != mean.size()) throw DimensionMismatch("action dim");
    Eigen::VectorXd u(action.size());
    for (int i = 0; i < action.size(); ++i) {
        const double a = action[i];
        if (!(a >= -1.0 && a <= 1.0)) {
            throw ActionOutOfSupport("squashed action component outside [-1, 1]");
        }
        // atanh saturates a hair inside the boundary to stay finite.
        const double clipped = std::min(std::max(a, -1.0 + 1e-12), 1.0 - 1e-12);
        u[i] = std::atanh(clipped);
    }
    return gaussian_log_prob_pre_squash(mean, log_std, u);
}

GaussianLogProbGrad gaussian_log_prob_grad(const Eigen::VectorXd& mean,
                                           const Eigen::VectorXd& log_std,
                                           const Eigen::VectorXd& u) {
    const Eigen::VectorXd ls = clamp_log_std(log_std);
    GaussianLogProbGrad g;
    g.d_mean.resize(mean.size());
    g.d_log_std.resize(mean.size());
    for (int i = 0; i < mean.size(); ++i) {
        const double sigma = std::exp(ls[i]);
        const double z = (u[i] - mean[i]) / sigma;
        g.d_mean[i] = z / sigma;
        // Zero where the clamp is active: the parameter no longer moves sigma.
        const bool inside = log_std[i] > kLogStdMin && log_std[i] < kLogStdMax;
        g.d_log_std[i] = inside ? z * z - 1.0 : 0.0;
    }
    return g;
}

double gaussian_kl(const Eigen::VectorXd& mean0, const Eigen::VectorXd& log_std0,
                   const Eigen::VectorXd& mean1, const Eigen::VectorXd& log_std1) {
    const Eigen::VectorXd ls0 = clamp_log_std(log_std0);
    const Eigen::VectorXd ls1 = clamp_log_std(log_std1);
    double kl = 0.0;
    for (int i = 0; i < mean0.size(); ++i) {
        const double v0 = std::exp(2.0 * ls0[i]);
        const double v1 = std::exp(2.0 * ls1[i]);
        const double dm = mean1[i] - mean0[i];
        kl += ls1[i] - ls0[i] + (v0 + dm * dm) / (2.0 * v1) - 0.5;
    }
    return kl;
}

double gaussian_entropy(const Eigen::VectorXd& log_std) {
    const Eigen::VectorXd ls = clamp_log_std(log_std);
    double h = 0.0;
    for (int i = 0; i < ls.size(); ++i) h += ls[i] + 0.5 + kHalfLog2Pi;
    return h;
}

Eigen::VectorXd softmax(const Eigen::VectorXd& logits) {
    const double m = logits.maxCoeff();
    Eigen::VectorXd e = (logits.array() - m).exp();
    return e / e.sum();
}

Eigen::Vector4i categorical_sample(const Eigen::VectorXd& logits, int levels, Rng& rng) {
    Eigen::Vector4i action;
    for (int g = 0; g < 4; ++g) {
        const Eigen::VectorXd p = softmax(logits.segment(g * levels, levels));
        const double x = rng.uniform01();
        double acc = 0.0;
        int pick = levels - 1;
        for (int k = 0; k < levels; ++k) {
            acc += p[k];
            if (x < acc) {
                pick = k;
                break;
            }
        }
        action[g] = pick;
    }
    return action;
}

double categorical_log_prob(const Eigen::VectorXd& logits, int levels,
                            const Eigen::Vector4i& levels_action) {
    double lp = 0.0;
    for (int g = 0; g < 4; ++g) {
        const int a = levels_action[g];
        if (a < 0 || a >= levels) throw ActionOutOfSupport("discrete level out of range");
        const Eigen::VectorXd group = logits.segment(g * levels, levels);
        const double m = group.maxCoeff();
        const double lse = m + std::log((group.array() - m).exp().sum());
        lp += group[a] - lse;
    }
    return lp;
}

Eigen::VectorXd categorical_log_prob_grad(const Eigen::VectorXd& logits, int levels,
                                          const Eigen::Vector4i& levels_action) {
    Eigen::VectorXd grad(logits.size());
    for (int g = 0; g < 4; ++g) {
        Eigen::VectorXd p = softmax(logits.segment(g * levels, levels));
        p = -p;
        p[levels_action[g]] += 1.0;
        grad.segment(g * levels, levels) = p;
    }
    return grad;
}

double categorical_kl(const Eigen::VectorXd& logits0, const Eigen::VectorXd& logits1,
                      int levels) {
    double kl = 0.0;
    for (int g = 0; g < 4; ++g) {
        const Eigen::VectorXd p = softmax(logits0.segment(g * levels, levels));
        const Eigen::VectorXd q = softmax(logits1.segment(g * levels, levels));
        for (int k = 0; k < levels; ++k) {
            if (p[k] > 0.0) kl += p[k] * (std::log(p[k]) - std::log(q[k]));
        }
    }
    return kl;
}

double categorical_entropy(const Eigen::VectorXd& logits, int levels) {
    double h = 0.0;
    for (int g = 0; g < 4; ++g) {
        const Eigen::VectorXd p = softmax(logits.segment(g * levels, levels));
        for (int k = 0; k < levels; ++k) {
            if (p[k] > 0.0) h -= p[k] * std::log(p[k]);
        }
    }
    return h;
}

Eigen::VectorXd categorical_fisher_vec(const Eigen::VectorXd& logits, int levels,
                                       const Eigen::VectorXd& v) {
    Eigen::VectorXd out(logits.size());
    for (int g = 0; g < 4; ++g) {
        const Eigen::VectorXd p = softmax(logits.segment(g * levels, levels));
        const Eigen::VectorXd vg = v.segment(g * levels, levels);
        const double pv = p.dot(vg);
        out.segment(g * levels, levels) = (p.array() * vg.array()).matrix() - pv * p;
    }
    return out;
}

Eigen::Vector4i categorical_argmax(const Eigen::VectorXd& logits, int levels) {
    Eigen::Vector4i action;
    for (int g = 0; g < 4; ++g) {
        Eigen::Index best = 0;
        logits.segment(g * levels, levels).maxCoeff(&best);
        action[g] = static_cast<int>(best);
    }
    return action;
}

} // namespace cdpr
