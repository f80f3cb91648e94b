#pragma once

#include "cdpr/geometry.hpp"

#include <Eigen/Dense>
#include <optional>

namespace cdpr {

struct DynamicsParams {
    double mass = 1.0;        // kg
    double gravity = 9.81;    // m/s^2, acting in -z
    double dt = 0.1;          // s
    double max_tension = 20.0; // N per cable
};

struct EndEffectorState {
    Vec3 position = Vec3::Zero(); // m
    Vec3 velocity = Vec3::Zero(); // m/s
};

struct CableTensions {
    Eigen::Vector4d t = Eigen::Vector4d::Zero(); // N, 0 <= t_i <= max_tension
};

// Net acceleration of the point mass: a = (-J^T t) / m + (0, 0, -g).
// Jacobian rows point anchor -> end effector, so each cable pulls the mass
// toward its anchor with magnitude t_i.
Vec3 acceleration(const RobotGeometry& geom, const DynamicsParams& params,
                  const EndEffectorState& state, const CableTensions& tensions);

// One semi-implicit Euler step: v' = v + a dt, c' = c + v' dt. The position
// is clamped to `bounds` (the workspace box by default) and the velocity
// component normal to a hit face is zeroed.
EndEffectorState step(const RobotGeometry& geom, const DynamicsParams& params,
                      const EndEffectorState& state, const CableTensions& tensions,
                      const std::optional<std::pair<Vec3, Vec3>>& bounds = std::nullopt);

struct EquilibriumResult {
    CableTensions tensions;
    double residual; // |F_cable - F_gravity|, N
};

// Nonnegative bounded tensions that hold `position` statically against
// gravity. Throws InfeasibleEquilibrium when the best residual exceeds
// 1e-6 * m * g.
EquilibriumResult static_equilibrium_tensions(const RobotGeometry& geom,
                                              const DynamicsParams& params,
                                              const Vec3& position);

} // namespace cdpr
