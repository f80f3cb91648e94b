#include "cdpr/normalizer.hpp"

#include "cdpr/errors.hpp"

#include <cmath>

namespace cdpr {

void Normalizer::update(const Eigen::VectorXd& x) {
    if (x.size() != mean_.size()) throw DimensionMismatch("normalizer input dim");
    count_ += 1.0;
    const Eigen::VectorXd delta = x - mean_;
    mean_ += delta / count_;
    m2_ += delta.cwiseProduct(x - mean_);
}

Eigen::VectorXd Normalizer::variance() const {
    if (count_ < 2.0) return Eigen::VectorXd::Ones(mean_.size());
    return m2_ / count_;
}

Eigen::VectorXd Normalizer::normalize(const Eigen::VectorXd& x) const {
    if (x.size() != mean_.size()) throw DimensionMismatch("normalizer input dim");
    const Eigen::VectorXd var = variance();
    Eigen::VectorXd out(x.size());
    for (int i = 0; i < x.size(); ++i) {
        out[i] = (x[i] - mean_[i]) / std::max(std::sqrt(var[i]), kStdFloor);
    }
    return out;
}

void Normalizer::restore(const Eigen::VectorXd& mean, const Eigen::VectorXd& m2,
                         double count) {
    if (mean.size() != m2.size()) throw DimensionMismatch("normalizer restore");
    mean_ = mean;
    m2_ = m2;
    count_ = count;
}

void Normalizer::expand(int new_dim) {
    if (new_dim < dim()) throw DimensionMismatch("normalizer cannot shrink");
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(new_dim);
    Eigen::VectorXd m2 = Eigen::VectorXd::Zero(new_dim);
    mean.head(dim()) = mean_;
    m2.head(dim()) = m2_;
    mean_ = mean;
    m2_ = m2;
}

} // namespace cdpr
