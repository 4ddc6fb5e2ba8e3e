#pragma once

#include <cmath>

namespace irsim {

// Cartesian location in meters. z is height above ground.
struct position {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

inline double distance(const position &p, const position &q) {
    const double dx = p.x - q.x;
    const double dy = p.y - q.y;
    const double dz = p.z - q.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

// Unit direction vectors only; used for reflector panel axes.
struct axis3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

} // namespace irsim
