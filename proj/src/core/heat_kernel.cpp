#include "parobs/core/heat_kernel.hpp"

#include "parobs/core/error.hpp"

#include <cmath>
#include <numbers>

namespace parobs {

double heat_kernel_r2(double r2, double t, int n) {
    if (n < 1 || n > 3) throw Error(ErrorKind::InvalidGeometry, "heat_kernel: n must be 1, 2 or 3");
    if (t <= 0.0) return 0.0;
    const double norm = std::pow(4.0 * std::numbers::pi * t, -0.5 * n);
    return norm * std::exp(-r2 / (4.0 * t));
}

double heat_kernel(std::span<const double> x, double t, int n) {
    if (static_cast<int>(x.size()) < n) throw Error(ErrorKind::ShapeMismatch, "heat_kernel: point has too few coordinates");
    double r2 = 0.0;
    for (int a = 0; a < n; ++a) r2 += x[a] * x[a];
    return heat_kernel_r2(r2, t, n);
}

}  // namespace parobs
