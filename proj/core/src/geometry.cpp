#include "cdpr/geometry.hpp"

#include "cdpr/errors.hpp"

namespace cdpr {

RobotGeometry make_geometry(double frame_x, double frame_y, double anchor_height,
                            const Vec3& workspace_min, const Vec3& workspace_max) {
    RobotGeometry g;
    g.anchors = {Vec3(0.0, 0.0, anchor_height), Vec3(frame_x, 0.0, anchor_height),
                 Vec3(frame_x, frame_y, anchor_height), Vec3(0.0, frame_y, anchor_height)};
    g.workspace_min = workspace_min;
    g.workspace_max = workspace_max;
    return g;
}

std::array<Vec3, 4> cable_vectors(const RobotGeometry& geom, const Pose& pose) {
    std::array<Vec3, 4> out;
    for (int i = 0; i < 4; ++i) {
        out[i] = pose.position - geom.anchors[i] + pose.orientation * geom.attachment_offsets[i];
    }
    return out;
}

std::array<double, 4> cable_lengths(const RobotGeometry& geom, const Pose& pose) {
    const auto l = cable_vectors(geom, pose);
    return {l[0].norm(), l[1].norm(), l[2].norm(), l[3].norm()};
}

CableJacobian cable_jacobian(const RobotGeometry& geom, const Pose& pose) {
    const auto l = cable_vectors(geom, pose);
    CableJacobian jac;
    for (int i = 0; i < 4; ++i) {
        const double len = l[i].norm();
        if (len < length_epsilon) {
            throw DegenerateConfiguration("end effector coincides with anchor " +
                                          std::to_string(i + 1));
        }
        jac.row(i) = (l[i] / len).transpose();
    }
    return jac;
}

bool workspace_contains(const RobotGeometry& geom, const Vec3& p) {
    return (p.array() >= geom.workspace_min.array()).all() &&
           (p.array() <= geom.workspace_max.array()).all();
}

} // namespace cdpr
