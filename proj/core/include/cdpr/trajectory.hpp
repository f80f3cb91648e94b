#pragma once

#include "cdpr/controller.hpp"
#include "cdpr/dynamics.hpp"
#include "cdpr/env.hpp"
#include "cdpr/geometry.hpp"
#include "cdpr/pid.hpp"
#include "cdpr/policy.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace cdpr {

enum class TrajectoryKind { kCircle, kSpiralRising, kSpiralShrinking };

struct TrajectorySpec {
    TrajectoryKind kind = TrajectoryKind::kCircle;
    Vec3 center = Vec3(1.155, 1.405, 1.2);
    double radius = 0.5;      // m
    double period = 20.0;     // s per revolution
    double z_rate = 0.02;     // m/s, rising spiral
    double radius_rate = 0.01; // m/s, shrinking spiral
    double duration = 40.0;   // s
};

// Named defaults matching the three evaluation rows: "circle", "spiral1"
// (rising), "spiral2" (shrinking).
TrajectorySpec default_trajectory(const std::string& name);

struct ReferencePoint {
    double t = 0.0;
    Vec3 position = Vec3::Zero();
    Vec3 velocity = Vec3::Zero();
};

// Samples the reference at t = k dt for k = 0 .. round(duration/dt) - 1 with
// exact analytic velocities. Throws TrajectoryLeavesWorkspace if any point
// falls outside the workspace box.
std::vector<ReferencePoint> generate(const RobotGeometry& geom, const TrajectorySpec& spec,
                                     double dt);

struct TrackingResult {
    std::vector<double> times;
    std::vector<Vec3> reference;
    std::vector<Vec3> actual;
    std::vector<double> errors; // |actual - reference| per step, m
    double rms = 0.0;           // over steps before divergence
    bool diverged = false;
};

// Root mean square of an error sequence. Throws EmptySequence.
double rms_error(const std::vector<double>& errors);

inline constexpr double kDivergenceError = 10.0; // m

// Closed-loop simulation along the reference. The state starts on the path
// (position and velocity of the first point); at every step the controller
// aims at the next reference point, the tensions are applied for dt, and the
// error is measured at the new sample instant. Tracking runs inside a widely
// inflated box (not the training workspace) so instability shows up as
// divergence rather than wall contact; diverged is set when the error
// exceeds kDivergenceError.
TrackingResult track(Controller& controller, const RobotGeometry& geom,
                     const DynamicsParams& params, const TrajectorySpec& spec, double dt);

// Applies the tensions that land exactly on the next reference point when
// feasible (inverse dynamics through the tension distributor). Validates the
// harness: tracking error stays at solver precision.
class InverseDynamicsController : public Controller {
public:
    InverseDynamicsController(const RobotGeometry& geom, const DynamicsParams& params)
        : geom_(geom), params_(params) {}
    CableTensions control(const EndEffectorState& state, const Vec3& ref_position,
                          const Vec3& ref_velocity, double dt) override;

private:
    RobotGeometry geom_;
    DynamicsParams params_;
};

// Presents the next reference point as the policy's target observation
// (receding waypoint); the reference velocity fills the desired-velocity
// slots of 12-dim policies. Actions are deterministic (mean / argmax).
class PolicyController : public Controller {
public:
    PolicyController(Policy policy, const DynamicsParams& params)
        : policy_(std::move(policy)), params_(params) {}
    CableTensions control(const EndEffectorState& state, const Vec3& ref_position,
                          const Vec3& ref_velocity, double dt) override;

private:
    Policy policy_;
    DynamicsParams params_;
};

struct SweepRow {
    std::string controller;
    double dt = 0.0;
    double rms = 0.0;
    bool diverged = false;
};

// A named controller builder; dt is passed so PID variants can retune per dt.
using ControllerFactory = std::function<std::unique_ptr<Controller>(double dt)>;

// Runs track() for every (controller, dt) pair; rows come out sorted by
// (controller name, dt). Divergence is recorded, never thrown.
std::vector<SweepRow> dt_sweep(
    const std::vector<std::pair<std::string, ControllerFactory>>& controllers,
    const RobotGeometry& geom, const DynamicsParams& base_params,
    const TrajectorySpec& spec, const std::vector<double>& dt_list);

} // namespace cdpr
