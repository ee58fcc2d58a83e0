#pragma once

#include <span>

namespace parobs {

/// Least-squares line y = slope * x + intercept.
/// residual is the root-mean-square of the vertical deviations.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;
    int points = 0;
};

LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Fit of log y against log x. Points with y <= 0 are skipped; throws
/// RadiiUnresolvable if fewer than `min_points` remain.
LineFit fit_loglog(std::span<const double> x, std::span<const double> y, int min_points = 4);

}  // namespace parobs
