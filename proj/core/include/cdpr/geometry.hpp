#pragma once

#include <Eigen/Dense>
#include <array>

namespace cdpr {

using Vec3 = Eigen::Vector3d;

// Rows are the unit vectors along each cable (anchor -> end effector).
using CableJacobian = Eigen::Matrix<double, 4, 3>;

// Frame geometry of the 4-cable robot. Anchors sit at the four top corners
// of the frame, all at the same height; the workspace is an axis-aligned box
// strictly below the anchors. Attachment offsets on the end effector are
// zero for the point-mass model.
struct RobotGeometry {
    std::array<Vec3, 4> anchors;
    Vec3 workspace_min;
    Vec3 workspace_max;
    std::array<Vec3, 4> attachment_offsets{Vec3::Zero(), Vec3::Zero(),
                                           Vec3::Zero(), Vec3::Zero()};

    Vec3 workspace_center() const { return 0.5 * (workspace_min + workspace_max); }
    double workspace_diagonal() const { return (workspace_max - workspace_min).norm(); }
};

struct Pose {
    Vec3 position = Vec3::Zero();
    Eigen::Matrix3d orientation = Eigen::Matrix3d::Identity();
};

// Anchors counterclockwise from the origin corner:
//   a1 = (0, 0, h), a2 = (fx, 0, h), a3 = (fx, fy, h), a4 = (0, fy, h)
RobotGeometry make_geometry(double frame_x = 2.31, double frame_y = 2.81,
                            double anchor_height = 3.22,
                            const Vec3& workspace_min = Vec3(0.3, 0.3, 0.3),
                            const Vec3& workspace_max = Vec3(2.01, 2.51, 2.5));

// Cable vectors l_i = c - a_i + R * b_i.
std::array<Vec3, 4> cable_vectors(const RobotGeometry& geom, const Pose& pose);

// Euclidean norms |l_i|, meters.
std::array<double, 4> cable_lengths(const RobotGeometry& geom, const Pose& pose);

// Row i is l_i / |l_i|. Throws DegenerateConfiguration when any cable is
// shorter than length_epsilon.
CableJacobian cable_jacobian(const RobotGeometry& geom, const Pose& pose);

bool workspace_contains(const RobotGeometry& geom, const Vec3& p);

inline constexpr double length_epsilon = 1e-9; // m

} // namespace cdpr
