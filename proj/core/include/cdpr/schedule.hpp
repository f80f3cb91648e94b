#pragma once

#include <cmath>

namespace cdpr {

struct LrSchedule {
    double lr_max = 3e-4;
    double lr_min = 3e-5;
    long warmup_steps = 0;
    long total_steps = 1;
};

// Linear warmup from 0 to lr_max over warmup_steps, then cosine decay to
// lr_min at total_steps. Continuous at the warmup boundary.
inline double cosine_warmup_lr(const LrSchedule& s, long t) {
    if (t < s.warmup_steps) {
        return s.lr_max * static_cast<double>(t) / static_cast<double>(s.warmup_steps);
    }
    const double span = static_cast<double>(s.total_steps - s.warmup_steps);
    const double progress = span > 0.0 ? static_cast<double>(t - s.warmup_steps) / span : 1.0;
    const double clipped = progress < 0.0 ? 0.0 : (progress > 1.0 ? 1.0 : progress);
    return s.lr_min + 0.5 * (s.lr_max - s.lr_min) * (1.0 + std::cos(M_PI * clipped));
}

} // namespace cdpr
