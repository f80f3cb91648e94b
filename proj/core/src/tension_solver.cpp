#include "cdpr/tension_solver.hpp"

#include <array>
#include <limits>
#include <vector>

namespace cdpr {

namespace {

Eigen::VectorXd min_norm_lsq(const Eigen::MatrixXd& A, const Eigen::Vector3d& b) {
    // Minimum-norm least-squares solution; rank-revealing so the symmetric
    // 4-cable case yields the symmetric tension vector.
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(A);
    cod.setThreshold(1e-10);
    return cod.solve(b);
}

} // namespace

TensionSolution solve_bounded_tensions(const Eigen::Matrix<double, 3, 4>& A,
                                       const Eigen::Vector3d& b, double t_max) {
    constexpr double bound_slack = 1e-12;

    // Fast path: unconstrained minimum-norm solution already inside the box.
    {
        Eigen::VectorXd t = min_norm_lsq(A, b);
        if ((t.array() >= -bound_slack).all() && (t.array() <= t_max + bound_slack).all()) {
            Eigen::Vector4d tc = t.cwiseMax(0.0).cwiseMin(t_max);
            return {tc, (A * tc - b).norm()};
        }
    }

    // Active-set enumeration: each tension is at 0, at t_max, or free.
    // 3^4 = 81 partitions; keep the feasible candidate with the smallest
    // residual, breaking near-ties toward the smallest tension norm.
    Eigen::Vector4d best = Eigen::Vector4d::Zero();
    double best_resid = std::numeric_limits<double>::infinity();
    double best_norm2 = std::numeric_limits<double>::infinity();

    std::array<int, 4> state{}; // 0 = at zero, 1 = at max, 2 = free
    for (int code = 0; code < 81; ++code) {
        int c = code;
        for (int i = 0; i < 4; ++i) {
            state[i] = c % 3;
            c /= 3;
        }

        Eigen::Vector4d t = Eigen::Vector4d::Zero();
        Eigen::Vector3d rhs = b;
        std::vector<int> free_idx;
        for (int i = 0; i < 4; ++i) {
            if (state[i] == 1) {
                t[i] = t_max;
                rhs -= t_max * A.col(i);
            } else if (state[i] == 2) {
                free_idx.push_back(i);
            }
        }

        if (!free_idx.empty()) {
            Eigen::MatrixXd Af(3, static_cast<int>(free_idx.size()));
            for (size_t k = 0; k < free_idx.size(); ++k) Af.col(static_cast<int>(k)) = A.col(free_idx[k]);
            Eigen::VectorXd tf = min_norm_lsq(Af, rhs);
            bool ok = true;
            for (int k = 0; k < tf.size(); ++k) {
                if (tf[k] < -bound_slack || tf[k] > t_max + bound_slack) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            for (size_t k = 0; k < free_idx.size(); ++k) {
                t[free_idx[k]] = std::min(std::max(tf[static_cast<int>(k)], 0.0), t_max);
            }
        }

        const double resid = (A * t - b).norm();
        const double norm2 = t.squaredNorm();
        if (resid < best_resid - 1e-9 ||
            (resid < best_resid + 1e-9 && norm2 < best_norm2)) {
            best = t;
            best_resid = resid;
            best_norm2 = norm2;
        }
    }
    return {best, best_resid};
}

} // namespace cdpr
