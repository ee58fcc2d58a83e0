#include "parobs/diagnostics/blowup.hpp"

#include "parobs/core/error.hpp"
#include "parobs/oracle/closed_form.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>

namespace parobs {

namespace {

struct Sampler {
    const ScalarField& u;

    bool inside(double x1, double x2, double t) const {
        const Grid& g = u.grid;
        const double e = 1e-9 * g.h;
        const double et = 1e-9 * g.dt;
        if (x1 < g.extent[0].lo - e || x1 > g.extent[0].lo + (g.n_space - 1) * g.h + e) return false;
        if (g.dim == 2 && (x2 < g.extent[1].lo - e || x2 > g.extent[1].lo + (g.n_space - 1) * g.h + e)) return false;
        return t >= g.t0 - et && t <= g.t_end() + et;
    }

    double operator()(double x1, double x2, double t) const {
        const Grid& g = u.grid;
        auto split = [](double f, int n, int& i, double& th) {
            f = std::clamp(f, 0.0, static_cast<double>(n - 1));
            i = std::min(static_cast<int>(f), n - 2);
            th = f - i;
        };
        int i, j = 0, k;
        double a, b = 0.0, c;
        split((x1 - g.extent[0].lo) / g.h, g.n_space, i, a);
        if (g.dim == 2) split((x2 - g.extent[1].lo) / g.h, g.n_space, j, b);
        split((t - g.t0) / g.dt, g.n_time, k, c);
        auto level = [&](int kk) {
            if (g.dim == 1) return (1 - a) * u.at(kk, i) + a * u.at(kk, i + 1);
            return (1 - a) * (1 - b) * u.at(kk, g.index(i, j)) + a * (1 - b) * u.at(kk, g.index(i + 1, j)) +
                   (1 - a) * b * u.at(kk, g.index(i, j + 1)) + a * b * u.at(kk, g.index(i + 1, j + 1));
        };
        return (1 - c) * level(k) + c * level(k + 1);
    }
};

Grid reference_lattice(int dim, const BlowupLattice& lat) {
    std::array<Interval, 2> ext{Interval{-1.0, 1.0}, Interval{0.0, 2.0}};
    return make_grid(dim, dim == 2 ? Geometry::HalfBoxWithGamma : Geometry::Box, lat.n_space, lat.n_time,
                     std::span<const Interval>(ext.data(), dim), 2.0, -1.0);
}

double golden_min(const std::function<double(double)>& f, double lo, double hi, int iters = 40) {
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < iters; ++it) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    return fc <= fd ? c : d;
}

}  // namespace

ScalarField hyperbolic_blowup(const ScalarField& u, SpaceTimePoint p, double r, const BlowupLattice& lattice) {
    u.check_shape();
    if (!(r > 0.0)) throw Error(ErrorKind::WindowOutsideGrid, "blow-up radius must be positive");
    const Grid ref = reference_lattice(u.grid.dim, lattice);
    const Sampler S{u};
    ScalarField out(ref, u.label + "_blowup");
    const double norm = std::pow(r, -1.5);
    for (int k = 0; k < ref.n_time; ++k) {
        const double t = p.t + r * ref.time(k);
        for (int n = 0; n < ref.nodes(); ++n) {
            const double x1 = p.x1 + r * ref.x1(n);
            const double x2 = p.x2 + r * ref.x2(n);
            if (!S.inside(x1, x2, t)) {
                throw Error(ErrorKind::WindowOutsideGrid, "scaled window leaves the field's grid");
            }
            out.at(k, n) = norm * S(x1, x2, t);
        }
    }
    return out;
}

ProfileFit fit_blowup_profile(const ScalarField& rescaled, double x2_max) {
    rescaled.check_shape();
    const Grid& g = rescaled.grid;
    struct Sample {
        double x1, x2, t, v;
    };
    std::vector<Sample> all;
    for (int k = 0; k < g.n_time; ++k) {
        for (int n = 0; n < g.nodes(); ++n) {
            if (g.x2(n) <= x2_max + 1e-12) all.push_back({g.x1(n), g.x2(n), g.time(k), rescaled.at(k, n)});
        }
    }
    // coarse pass on a thinned sample set
    std::vector<Sample> coarse;
    const std::size_t thin = std::max<std::size_t>(1, all.size() / 2000);
    for (std::size_t q = 0; q < all.size(); q += thin) coarse.push_back(all[q]);

    auto err = [](const std::vector<Sample>& set, double w, double rot) {
        double e = 0.0;
        for (const Sample& s : set) e = std::max(e, std::abs(s.v - signorini_profile(s.x1, s.x2, s.t, w, rot)));
        return e;
    };

    const double quarter = std::numbers::pi / 4.0;
    double best_w = 0.0, best_rot = 0.0, best = INFINITY;
    for (int a = -200; a <= 200; ++a) {
        for (int b = -20; b <= 20; ++b) {
            const double w = 0.01 * a, rot = quarter * b / 20.0;
            const double e = err(coarse, w, rot);
            if (e < best) {
                best = e;
                best_w = w;
                best_rot = rot;
            }
        }
    }
    // alternate golden-section refinements within one coarse cell
    double dw = 0.01, dr = quarter / 20.0;
    for (int round = 0; round < 4; ++round) {
        best_w = golden_min([&](double w) { return err(all, w, best_rot); }, best_w - dw, best_w + dw);
        best_rot = golden_min([&](double rot) { return err(all, best_w, rot); }, best_rot - dr, best_rot + dr);
        dw *= 0.5;
        dr *= 0.5;
    }

    ProfileFit fit;
    fit.omega_hat = best_w;
    fit.rotation_hat = best_rot;
    fit.linf_error = err(all, best_w, best_rot);
    double pmax = 0.0;
    for (const Sample& s : all) pmax = std::max(pmax, std::abs(signorini_profile(s.x1, s.x2, s.t, best_w, best_rot)));
    fit.linf_relative = pmax > 0.0 ? fit.linf_error / pmax : INFINITY;
    return fit;
}

NondegeneracyResult nondegeneracy_l(const ScalarField& u, SpaceTimePoint p, std::span<const double> radii) {
    u.check_shape();
    const Grid& g = u.grid;
    if (radii.size() < 4) throw Error(ErrorKind::RadiiUnresolvable, "non-degeneracy needs at least four radii");
    NondegeneracyResult res;
    res.radii.assign(radii.begin(), radii.end());
    std::sort(res.radii.begin(), res.radii.end());

    const double e = 1e-9 * g.h;
    const double x1_hi = g.extent[0].lo + (g.n_space - 1) * g.h;
    const double x2_hi = g.dim == 2 ? g.extent[1].lo + (g.n_space - 1) * g.h : 0.0;
    for (double r : res.radii) {
        if (!(r >= 2.0 * g.h * (1.0 - 1e-12)))
            throw Error(ErrorKind::RadiiUnresolvable, "ball radius " + std::to_string(r) + " is below two cells");
        bool ok = p.x1 - r >= g.extent[0].lo - e && p.x1 + r <= x1_hi + e &&
                  p.t - r >= g.t0 - 1e-9 * g.dt && p.t + r <= g.t_end() + 1e-9 * g.dt;
        if (g.dim == 2) ok = ok && p.x2 + r <= x2_hi + e && (p.x2 - r >= g.extent[1].lo - e || g.geometry == Geometry::HalfBoxWithGamma);
        if (!ok) throw Error(ErrorKind::RadiiUnresolvable, "ball of radius " + std::to_string(r) + " is not inside the grid");

        double s = 0.0;
        for (int k = 0; k < g.n_time; ++k) {
            const double dt2 = (g.time(k) - p.t) * (g.time(k) - p.t);
            if (dt2 > r * r) continue;
            for (int n = 0; n < g.nodes(); ++n) {
                const double dx = g.x1(n) - p.x1, dy = g.x2(n) - p.x2;
                if (dx * dx + dy * dy + dt2 <= r * r * (1.0 + 1e-12)) s = std::max(s, std::abs(u.at(k, n)));
            }
        }
        res.sup.push_back(s);
    }

    double logsum = 0.0;
    bool zero = false;
    for (int q = 0; q < 4; ++q) {
        const double ratio = res.sup[q] / std::pow(res.radii[q], 1.5);
        if (ratio <= 0.0) zero = true;
        else logsum += std::log(ratio);
    }
    res.l_hat = zero ? 0.0 : std::exp(logsum / 4.0);
    int positive = 0;
    for (double s : res.sup) positive += s > 0.0 ? 1 : 0;
    if (positive >= 4) {
        res.fit = fit_loglog(res.radii, res.sup, 4);
        res.has_fit = true;
    }
    res.degenerate = res.l_hat == 0.0 || !res.has_fit || res.fit.slope > 1.75;
    return res;
}

}  // namespace parobs
