#include "parobs/oracle/closed_form.hpp"

#include <cmath>
#include <numbers>

namespace parobs {

namespace {

struct Local {
    double a;   // y1 + omega t
    double b;   // y2
    double c;   // cos(rotation)
    double s;   // sin(rotation)
};

Local to_local(double x1, double x2, double t, double omega, double rotation) {
    const double c = std::cos(rotation);
    const double s = std::sin(rotation);
    return {c * x1 + s * x2 + omega * t, -s * x1 + c * x2, c, s};
}

}  // namespace

double signorini_profile(double x1, double x2, double t, double omega, double rotation) {
    const Local l = to_local(x1, x2, t, omega, rotation);
    const double rho = std::hypot(l.a, l.b);
    if (rho == 0.0) return 0.0;
    if (l.b == 0.0 && l.a < 0.0) return 0.0;  // cos(3 pi / 2) is not exactly 0 in floating point
    const double theta = std::atan2(std::abs(l.b), l.a);
    return (2.0 / 3.0) * rho * std::sqrt(rho) * std::cos(1.5 * theta);
}

std::array<double, 2> signorini_profile_gradient(double x1, double x2, double t, double omega, double rotation) {
    const Local l = to_local(x1, x2, t, omega, rotation);
    const double rho = std::hypot(l.a, l.b);
    if (rho == 0.0) return {0.0, 0.0};
    // Re((2/3) z^{3/2}) has gradient (Re z^{1/2}, -Im z^{1/2}) on the upper branch;
    // the |y2| reflection flips the normal component below the axis.
    const double theta = std::atan2(std::abs(l.b), l.a);
    const double sr = std::sqrt(rho);
    const double g1 = sr * std::cos(0.5 * theta);
    double g2 = -sr * std::sin(0.5 * theta);
    if (l.b < 0.0) g2 = -g2;
    return {l.c * g1 - l.s * g2, l.s * g1 + l.c * g2};
}

double heat_series_solution(std::span<const SeriesMode> modes, double x, double t, SeriesKind kind) {
    double sum = 0.0;
    for (const SeriesMode& m : modes) {
        switch (kind) {
            case SeriesKind::Sine: {
                const double w = std::numbers::pi * m.k;
                sum += m.amplitude * std::exp(-w * w * t) * std::sin(w * x);
                break;
            }
            case SeriesKind::Cosine: {
                const double w = std::numbers::pi * m.k;
                sum += m.amplitude * std::exp(-w * w * t) * std::cos(w * x);
                break;
            }
            case SeriesKind::Periodic:
                sum += m.amplitude * std::exp(-m.k * m.k * t) * std::cos(m.k * x);
                break;
        }
    }
    return sum;
}

}  // namespace parobs
