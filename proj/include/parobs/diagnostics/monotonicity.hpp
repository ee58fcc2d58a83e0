#pragma once

#include "parobs/core/field.hpp"

#include <span>
#include <vector>

namespace parobs {

struct SpaceTimePoint {
    double x1 = 0.0;
    double x2 = 0.0;
    double t = 0.0;
};

struct MonotonicityOptions {
    /// Quadrature nodes per radius: each radius is evaluated on the sub-lattice
    /// through the centre with stride round(r / (samples_per_radius * h)), so
    /// radii related by powers of two see geometrically similar point sets.
    int samples_per_radius = 8;
    int time_nodes = 48;  ///< midpoint nodes on s in (-r^2, 0)
};

struct PhiPoint {
    double r = 0.0;
    double phi = 0.0;
    int stride = 1;
};

/// phi(r) = (1/r) int_{-r^2}^0 int |grad(eta w)|^2 G(x - x0, -s) dx ds with eta
/// the radial cutoff of radius `cutoff_radius` about the centre. Trapezoid in
/// space, midpoint in s, linear interpolation of w between time levels, and the
/// Gaussian dropped where it is below 1e-16 of its peak.
///
/// The centre must be a grid node. Throws CenterNotZero when
/// |w(centre)| > 10 h^{1/2} |w|_inf and StripOutsideGrid when the time strip
/// leaves the field's time range.
std::vector<PhiPoint> monotonicity_functional(const ScalarField& w, SpaceTimePoint center,
                                              std::span<const double> radii, double cutoff_radius,
                                              const MonotonicityOptions& opts = {});

}  // namespace parobs
