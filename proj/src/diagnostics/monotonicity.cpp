#include "parobs/diagnostics/monotonicity.hpp"

#include "parobs/core/cutoff.hpp"
#include "parobs/core/error.hpp"
#include "parobs/core/heat_kernel.hpp"

#include <algorithm>
#include <cmath>

namespace parobs {

namespace {

// G drops below 1e-16 of its peak once |x|^2 / (4 tau) > ln(1e16).
const double kTruncation = 4.0 * std::log(1e16);

int nearest_index(double x, double lo, double h) { return static_cast<int>(std::lround((x - lo) / h)); }

}  // namespace

std::vector<PhiPoint> monotonicity_functional(const ScalarField& w, SpaceTimePoint center,
                                              std::span<const double> radii, double cutoff_radius,
                                              const MonotonicityOptions& opts) {
    w.check_shape();
    const Grid& g = w.grid;
    const double h = g.h;
    const int n = g.n_space;
    const int ny = g.dim == 2 ? n : 1;

    const int ic = nearest_index(center.x1, g.extent[0].lo, h);
    const int jc = g.dim == 2 ? nearest_index(center.x2, g.extent[1].lo, h) : 0;
    if (ic < 0 || ic >= n || jc < 0 || jc >= ny || std::abs(g.x(0, ic) - center.x1) > 1e-9 * h ||
        (g.dim == 2 && std::abs(g.x(1, jc) - center.x2) > 1e-9 * h)) {
        throw Error(ErrorKind::StripOutsideGrid, "centre must be a node of the field's grid");
    }
    const double rmax = radii.empty() ? 0.0 : *std::max_element(radii.begin(), radii.end());
    const double tol_t = 1e-9 * std::max(1.0, std::abs(g.dt));
    if (center.t > g.t_end() + tol_t || center.t - rmax * rmax < g.t0 - tol_t) {
        throw Error(ErrorKind::StripOutsideGrid, "time strip (t0 - r^2, t0] leaves the field's time range");
    }

    auto value_at = [&](int node, double t) {
        double kf = (t - g.t0) / g.dt;
        kf = std::clamp(kf, 0.0, static_cast<double>(g.n_time - 1));
        const int k = std::min(static_cast<int>(kf), g.n_time - 2);
        const double th = kf - k;
        return (1.0 - th) * w.at(k, node) + th * w.at(k + 1, node);
    };

    const double wnorm = max_abs(w.values);
    const double wc = value_at(g.index(ic, jc), center.t);
    if (std::abs(wc) > 10.0 * std::sqrt(h) * wnorm) {
        throw Error(ErrorKind::CenterNotZero, "w does not vanish at the centre");
    }

    std::vector<PhiPoint> out;
    for (double r : radii) {
        const int m = std::max(1, static_cast<int>(std::lround(r / (opts.samples_per_radius * h))));
        const double hm = m * h;
        // sub-lattice index ranges: i = ic + a m, j = jc + b m
        const int a_lo = -(ic / m), a_hi = (n - 1 - ic) / m;
        const int b_lo = g.dim == 2 ? -(jc / m) : 0, b_hi = g.dim == 2 ? (ny - 1 - jc) / m : 0;
        const int na = a_hi - a_lo + 1, nb = b_hi - b_lo + 1;

        double total = 0.0;
        std::vector<double> ew(static_cast<std::size_t>(na) * nb);
        for (int q = 0; q < opts.time_nodes; ++q) {
            const double tau = r * r * (q + 0.5) / opts.time_nodes;
            const double t = center.t - tau;
            const double reach = std::sqrt(kTruncation * tau);
            const int span = static_cast<int>(std::ceil(reach / hm)) + 2;
            const int a0 = std::max(a_lo, -span), a1 = std::min(a_hi, span);
            const int b0 = std::max(b_lo, -span), b1 = std::min(b_hi, span);

            auto at = [&](int a, int b) -> double& {
                return ew[static_cast<std::size_t>(b - b_lo) * na + (a - a_lo)];
            };
            for (int b = b0; b <= b1; ++b) {
                for (int a = a0; a <= a1; ++a) {
                    const int i = ic + a * m, j = jc + b * m;
                    const double dx = a * hm, dy = b * hm;
                    at(a, b) = radial_cutoff(std::hypot(dx, dy), cutoff_radius) * value_at(g.index(i, j), t);
                }
            }
            double slice_sum = 0.0;
            for (int b = b0; b <= b1; ++b) {
                for (int a = a0; a <= a1; ++a) {
                    const double dx = a * hm, dy = b * hm;
                    const double r2 = dx * dx + dy * dy;
                    if (r2 > kTruncation * tau) continue;
                    double g1 = 0.0;
                    if (a > a0 && a < a1) g1 = (at(a + 1, b) - at(a - 1, b)) / (2.0 * hm);
                    double g2 = 0.0;
                    if (g.dim == 2) {
                        if (b > b0 && b < b1) {
                            g2 = (at(a, b + 1) - at(a, b - 1)) / (2.0 * hm);
                        } else if (b == b_lo && b + 2 <= b1) {
                            g2 = (-3.0 * at(a, b) + 4.0 * at(a, b + 1) - at(a, b + 2)) / (2.0 * hm);
                        }
                    }
                    double wt = 1.0;
                    if (a == a_lo || a == a_hi) wt *= 0.5;
                    if (g.dim == 2 && (b == b_lo || b == b_hi)) wt *= 0.5;
                    slice_sum += wt * (g1 * g1 + g2 * g2) * heat_kernel_r2(r2, tau, g.dim);
                }
            }
            total += slice_sum * std::pow(hm, g.dim);
        }
        out.push_back({r, total * (r * r / opts.time_nodes) / r, m});
    }
    return out;
}

}  // namespace parobs
