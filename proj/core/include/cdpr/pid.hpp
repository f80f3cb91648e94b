#pragma once

#include "cdpr/controller.hpp"
#include "cdpr/dynamics.hpp"
#include "cdpr/geometry.hpp"

#include <vector>

namespace cdpr {

struct PidGains {
    Vec3 kp = Vec3::Zero(); // N/m
    Vec3 ki = Vec3::Zero(); // N/(m s)
    Vec3 kd = Vec3::Zero(); // N s/m
};

struct PidState {
    Vec3 integral = Vec3::Zero();   // m s, clamped per axis
    Vec3 prev_error = Vec3::Zero(); // m
    double integral_limit = 1.0;    // m s (anti-windup clamp)
};

// Task-space PID with gravity feedforward:
//   F = Kp.e + Ki.clamp(integral) + Kd.(e - e_prev)/dt + (0, 0, m g)
// The integral accumulates e*dt before the clamp is applied.
Vec3 pid_force(const PidGains& gains, PidState& state, const Vec3& error, double dt,
               double mass, double gravity);

struct ForceDistribution {
    CableTensions tensions;
    double residual; // |realized - desired|, N
};

// Distributes a desired task-space force over nonnegative bounded cable
// tensions (least squares through -J^T). Infeasible wrenches are not an
// error; the realized residual is reported.
ForceDistribution force_to_tensions(const RobotGeometry& geom, const Pose& pose,
                                    const Vec3& desired_force, double max_tension);

class PidController : public Controller {
public:
    PidController(const RobotGeometry& geom, const DynamicsParams& params, PidGains gains)
        : geom_(geom), params_(params), gains_(gains) {}

    void reset() override { state_ = PidState{}; }
    CableTensions control(const EndEffectorState& state, const Vec3& ref_position,
                          const Vec3& ref_velocity, double dt) override;

    const PidGains& gains() const { return gains_; }

private:
    RobotGeometry geom_;
    DynamicsParams params_;
    PidGains gains_;
    PidState state_;
};

// Uniform-per-axis default tuning grid: Kp in {5, 15, 40}, Kd in {1, 5, 15},
// Ki in {0, 0.5, 2}.
std::vector<PidGains> default_gain_grid();

struct TrajectorySpec; // trajectory.hpp

// Simulates tracking for every candidate at params.dt and returns the gains
// with the lowest RMS error; exact ties go to the smaller gains (Kp, then Kd,
// then Ki). Throws AllCandidatesDiverged when no candidate finishes.
PidGains tune_gains(const RobotGeometry& geom, const DynamicsParams& params,
                    const TrajectorySpec& trajectory, const std::vector<PidGains>& grid);

} // namespace cdpr
