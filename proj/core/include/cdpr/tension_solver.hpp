#pragma once

#include <Eigen/Dense>

namespace cdpr {

struct TensionSolution {
    Eigen::Vector4d tensions; // N, each in [0, t_max]
    double residual;          // |A t - b|, N
};

// Minimize |A t - b|^2 subject to 0 <= t_i <= t_max. A is the 3x4 map from
// cable tensions to task-space force. The unconstrained minimum-norm solution
// is used when it is already inside the box; otherwise all 3^4 active-set
// partitions are enumerated and the feasible one with the smallest residual
// wins (ties broken toward the smallest tension norm, which keeps the
// symmetric configuration mapping to equal tensions).
TensionSolution solve_bounded_tensions(const Eigen::Matrix<double, 3, 4>& A,
                                       const Eigen::Vector3d& b, double t_max);

} // namespace cdpr
