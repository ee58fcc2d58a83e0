#pragma once

namespace parobs {

/// Quintic smootherstep 6s^5 - 15s^4 + 10s^3 clamped to [0,1]; C^2 at both ends.
double smootherstep(double s);

/// Radial cutoff: 1 for dist <= radius/2, smootherstep taper to 0 at dist = radius.
/// Being radial, its normal derivative vanishes on any line through the centre.
double radial_cutoff(double dist, double radius);

/// d/d(dist) of radial_cutoff.
double radial_cutoff_derivative(double dist, double radius);

}  // namespace parobs
