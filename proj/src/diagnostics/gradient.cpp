#include "parobs/diagnostics/gradient.hpp"

#include "parobs/core/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace parobs {

namespace {

// d/dx along a lattice line of n values with spacing h at index i.
double line_derivative(const auto& val, int i, int n, double h, bool wrap) {
    if (wrap) return (val((i + 1) % n) - val((i - 1 + n) % n)) / (2.0 * h);
    if (i == 0) return (-3.0 * val(0) + 4.0 * val(1) - val(2)) / (2.0 * h);
    if (i == n - 1) return (3.0 * val(n - 1) - 4.0 * val(n - 2) + val(n - 3)) / (2.0 * h);
    return (val(i + 1) - val(i - 1)) / (2.0 * h);
}

}  // namespace

GradientHolderResult holder_exponent_gradient(const ScalarField& u, const ScalarField& psi,
                                              const std::vector<FreeBoundarySnapshot>& snapshots,
                                              std::span<const double> radii) {
    u.check_shape();
    if (!(psi.grid == u.grid)) throw Error(ErrorKind::ShapeMismatch, "holder_exponent_gradient: grids differ");
    const Grid& g = u.grid;
    bool any = false;
    for (const auto& s : snapshots) any = any || !s.interface_points.empty();
    if (!any) throw Error(ErrorKind::EmptyFreeBoundary, "no interface points in the supplied snapshots");

    GradientHolderResult res;
    res.radii.assign(radii.begin(), radii.end());
    std::sort(res.radii.begin(), res.radii.end());
    res.grad_sup.assign(res.radii.size(), 0.0);
    res.normal_sup.assign(res.radii.size(), 0.0);
    const double dmax = res.radii.empty() ? 0.0 : res.radii.back();
    const int n = g.n_space;
    const bool wrap = g.geometry == Geometry::PeriodicLine;
    const bool half = g.geometry == Geometry::HalfBoxWithGamma;

    for (const auto& snap : snapshots) {
        const int k = snap.k;
        auto w = [&](int node) { return u.at(k, node) - psi.at(k, node); };
        for (int node = 0; node < g.nodes(); ++node) {
            double d2 = std::numeric_limits<double>::infinity();
            for (const auto& other : snapshots) {
                const double dt = std::abs(g.time(k) - other.t);
                if (dt > dmax * dmax) continue;
                for (const auto& p : other.interface_points) {
                    const double dx = g.x1(node) - p.x1, dy = g.x2(node) - p.x2;
                    d2 = std::min(d2, dx * dx + dy * dy + dt);
                }
            }
            if (!(d2 <= dmax * dmax)) continue;
            const double d = std::sqrt(d2);

            const int i = g.i_of(node), j = g.j_of(node);
            const double g1 = line_derivative([&](int ii) { return w(g.index(ii, j)); }, i, n, g.h, wrap);
            double g2 = 0.0;
            if (g.dim == 2) g2 = line_derivative([&](int jj) { return w(g.index(i, jj)); }, j, n, g.h, false);
            const double mag = std::hypot(g1, g2);
            for (std::size_t q = 0; q < res.radii.size(); ++q) {
                if (d <= res.radii[q]) {
                    res.grad_sup[q] = std::max(res.grad_sup[q], mag);
                    if (half && j == 0) res.normal_sup[q] = std::max(res.normal_sup[q], std::abs(g2));
                }
            }
        }
    }
    res.fit = fit_loglog(res.radii, res.grad_sup, 4);
    int positive = 0;
    for (double v : res.normal_sup) positive += v > 0.0 ? 1 : 0;
    if (half && positive >= 4) {
        res.normal_fit = fit_loglog(res.radii, res.normal_sup, 4);
        res.has_normal_fit = true;
    }
    return res;
}

}  // namespace parobs
