#pragma once

#include "cdpr/dynamics.hpp"
#include "cdpr/geometry.hpp"

namespace cdpr {

// Closed-loop tracking controller: given the current state and the reference
// point to aim for over the next interval, produce cable tensions.
class Controller {
public:
    virtual ~Controller() = default;
    virtual void reset() {}
    virtual CableTensions control(const EndEffectorState& state, const Vec3& ref_position,
                                  const Vec3& ref_velocity, double dt) = 0;
};

} // namespace cdpr
