#include "parobs/core/cutoff.hpp"

#include <algorithm>

namespace parobs {

double smootherstep(double s) {
    s = std::clamp(s, 0.0, 1.0);
    return s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
}

double radial_cutoff(double dist, double radius) {
    const double half = 0.5 * radius;
    return 1.0 - smootherstep((dist - half) / half);
}

double radial_cutoff_derivative(double dist, double radius) {
    const double half = 0.5 * radius;
    const double s = (dist - half) / half;
    if (s <= 0.0 || s >= 1.0) return 0.0;
    return -30.0 * s * s * (1.0 - s) * (1.0 - s) / half;
}

}  // namespace parobs
