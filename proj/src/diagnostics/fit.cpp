#include "parobs/diagnostics/fit.hpp"

#include "parobs/core/error.hpp"

#include <cmath>
#include <vector>

namespace parobs {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw Error(ErrorKind::ShapeMismatch, "fit_line needs two or more pairs");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    LineFit f;
    f.points = static_cast<int>(x.size());
    f.slope = sxx > 0 ? sxy / sxx : 0.0;
    f.intercept = my - f.slope * mx;
    double ss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - (f.slope * x[i] + f.intercept);
        ss += e * e;
    }
    f.residual = std::sqrt(ss / n);
    return f;
}

LineFit fit_loglog(std::span<const double> x, std::span<const double> y, int min_points) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
        if (x[i] > 0 && y[i] > 0) {
            lx.push_back(std::log(x[i]));
            ly.push_back(std::log(y[i]));
        }
    }
    if (static_cast<int>(lx.size()) < min_points) {
        throw Error(ErrorKind::RadiiUnresolvable, "log-log fit needs " + std::to_string(min_points) +
                                                      " positive samples, got " + std::to_string(lx.size()));
    }
    return fit_line(lx, ly);
}

}  // namespace parobs
