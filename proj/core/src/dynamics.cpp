#include "cdpr/dynamics.hpp"

#include "cdpr/errors.hpp"
#include "cdpr/tension_solver.hpp"

namespace cdpr {

Vec3 acceleration(const RobotGeometry& geom, const DynamicsParams& params,
                  const EndEffectorState& state, const CableTensions& tensions) {
    const CableJacobian jac = cable_jacobian(geom, {state.position});
    const Vec3 cable_force = -(jac.transpose() * tensions.t);
    return cable_force / params.mass + Vec3(0.0, 0.0, -params.gravity);
}

EndEffectorState step(const RobotGeometry& geom, const DynamicsParams& params,
                      const EndEffectorState& state, const CableTensions& tensions,
                      const std::optional<std::pair<Vec3, Vec3>>& bounds) {
    const Vec3 a = acceleration(geom, params, state, tensions);
    EndEffectorState next;
    next.velocity = state.velocity + a * params.dt;
    next.position = state.position + next.velocity * params.dt;

    const Vec3& lo = bounds ? bounds->first : geom.workspace_min;
    const Vec3& hi = bounds ? bounds->second : geom.workspace_max;
    for (int k = 0; k < 3; ++k) {
        if (next.position[k] < lo[k]) {
            next.position[k] = lo[k];
            if (next.velocity[k] < 0.0) next.velocity[k] = 0.0;
        } else if (next.position[k] > hi[k]) {
            next.position[k] = hi[k];
            if (next.velocity[k] > 0.0) next.velocity[k] = 0.0;
        }
    }
    return next;
}

EquilibriumResult static_equilibrium_tensions(const RobotGeometry& geom,
                                              const DynamicsParams& params,
                                              const Vec3& position) {
    const CableJacobian jac = cable_jacobian(geom, {position});
    // Cable force is -J^T t; it must equal (0, 0, m g) to cancel gravity.
    const Eigen::Matrix<double, 3, 4> A = -jac.transpose();
    const Eigen::Vector3d b(0.0, 0.0, params.mass * params.gravity);
    const TensionSolution sol = solve_bounded_tensions(A, b, params.max_tension);
    if (sol.residual > 1e-6 * params.mass * params.gravity) {
        throw InfeasibleEquilibrium("no sustainable tension set at this position, residual " +
                                    std::to_string(sol.residual) + " N");
    }
    return {CableTensions{sol.tensions}, sol.residual};
}

} // namespace cdpr
