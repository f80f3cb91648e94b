#pragma once

#include <Eigen/Dense>

namespace cdpr {

// Running mean/variance standardization for observations (Welford updates).
// Statistics keep updating during training collection and are frozen at
// evaluation simply by not calling update(). The standard deviation is
// floored so that observation slots that stayed constant during training
// (e.g. desired-velocity slots on reach tasks) do not blow up when they
// become live at evaluation time.
class Normalizer {
public:
    Normalizer() = default;
    explicit Normalizer(int dim)
        : mean_(Eigen::VectorXd::Zero(dim)), m2_(Eigen::VectorXd::Zero(dim)) {}

    static constexpr double kStdFloor = 0.1;

    void update(const Eigen::VectorXd& x);
    Eigen::VectorXd normalize(const Eigen::VectorXd& x) const;

    int dim() const { return static_cast<int>(mean_.size()); }
    double count() const { return count_; }
    const Eigen::VectorXd& mean() const { return mean_; }
    const Eigen::VectorXd& m2() const { return m2_; }
    Eigen::VectorXd variance() const;

    // Exact state restore (serialization round-trips bitwise).
    void restore(const Eigen::VectorXd& mean, const Eigen::VectorXd& m2, double count);

    // Widen to a larger observation; new slots start at mean 0, m2 0 and rely
    // on the std floor until they see data.
    void expand(int new_dim);

private:
    Eigen::VectorXd mean_;
    Eigen::VectorXd m2_; // sum of squared deviations
    double count_ = 0.0;
};

} // namespace cdpr
