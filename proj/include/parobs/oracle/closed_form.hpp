#pragma once

#include <array>
#include <span>
#include <utility>
#include <vector>

namespace parobs {

/// Traveling thin-obstacle profile (2/3) rho^{3/2} cos(3 theta / 2) with
/// rho = |(y1 + omega t, y2)|, theta = atan2(|y2|, y1 + omega t) in [0, pi],
/// where y is x rotated by -rotation. Even in y2; zero on {y2 = 0, y1 + omega t <= 0}.
double signorini_profile(double x1, double x2, double t, double omega = 0.0, double rotation = 0.0);

/// (d/dx1, d/dx2) of signorini_profile for x2 >= 0 (one-sided limit on x2 = 0).
std::array<double, 2> signorini_profile_gradient(double x1, double x2, double t, double omega = 0.0,
                                                 double rotation = 0.0);

enum class SeriesKind {
    Sine,      ///< sum a e^{-(pi k)^2 t} sin(pi k x), Dirichlet on [0,1]
    Cosine,    ///< sum a e^{-(pi k)^2 t} cos(pi k x), zero flux on [0,1]
    Periodic,  ///< sum a e^{-k^2 t} cos(k x), 2 pi periodic
};

struct SeriesMode {
    double k = 1.0;
    double amplitude = 1.0;
};

double heat_series_solution(std::span<const SeriesMode> modes, double x, double t, SeriesKind kind = SeriesKind::Sine);

}  // namespace parobs
