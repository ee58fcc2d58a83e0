#include "parobs/diagnostics/modulus.hpp"

#include "parobs/core/error.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace parobs {

namespace {

// Running max and min over [i - left, i + right] along a strided line of n
// entries, truncated at the ends (or wrapped when `wrap`).
void line_extrema(const double* mx_in, const double* mn_in, std::ptrdiff_t stride, int n, int left, int right,
                  bool wrap, double* mx_out, double* mn_out) {
    if (wrap) {
        for (int i = 0; i < n; ++i) {
            double hi = -INFINITY, lo = INFINITY;
            const int span = std::min(left + right + 1, n);
            for (int d = 0; d < span; ++d) {
                const int q = ((i - left + d) % n + n) % n;
                hi = std::max(hi, mx_in[q * stride]);
                lo = std::min(lo, mn_in[q * stride]);
            }
            mx_out[i * stride] = hi;
            mn_out[i * stride] = lo;
        }
        return;
    }
    std::deque<int> dmax, dmin;
    int pushed = 0;
    for (int i = 0; i < n; ++i) {
        const int hi_idx = std::min(n - 1, i + right);
        for (; pushed <= hi_idx; ++pushed) {
            while (!dmax.empty() && mx_in[dmax.back() * stride] <= mx_in[pushed * stride]) dmax.pop_back();
            dmax.push_back(pushed);
            while (!dmin.empty() && mn_in[dmin.back() * stride] >= mn_in[pushed * stride]) dmin.pop_back();
            dmin.push_back(pushed);
        }
        const int lo_idx = i - left;
        while (dmax.front() < lo_idx) dmax.pop_front();
        while (dmin.front() < lo_idx) dmin.pop_front();
        mx_out[i * stride] = mx_in[dmax.front() * stride];
        mn_out[i * stride] = mn_in[dmin.front() * stride];
    }
}

}  // namespace

ModulusResult time_derivative_modulus(const ScalarField& v, std::span<const double> radii, const ModulusOptions& opts) {
    v.check_shape();
    const Grid& g = v.grid;
    ModulusResult res;
    res.radii.assign(radii.begin(), radii.end());
    std::sort(res.radii.begin(), res.radii.end());
    for (double r : res.radii) {
        if (!(r >= 2.0 * g.h * (1.0 - 1e-12))) {
            throw Error(ErrorKind::RadiiUnresolvable, "window radius " + std::to_string(r) + " is below two cells");
        }
    }

    int k0 = 0;
    while (k0 < g.n_time && g.time(k0) < opts.t_min - 1e-12 * std::max(1.0, std::abs(opts.t_min))) ++k0;
    if (k0 >= g.n_time) throw Error(ErrorKind::RadiiUnresolvable, "t_min leaves no time levels");
    const int nt = g.n_time - k0;
    const int nodes = g.nodes();
    const int n = g.n_space;
    const bool wrap = g.geometry == Geometry::PeriodicLine;

    std::vector<double> base(static_cast<std::size_t>(nt) * nodes);
    for (int k = 0; k < nt; ++k) {
        for (int p = 0; p < nodes; ++p) {
            const double x = v.at(k0 + k, p);
            base[static_cast<std::size_t>(k) * nodes + p] = opts.positive_part ? std::max(x, 0.0) : x;
        }
    }

    std::vector<double> amax(base.size()), amin(base.size()), bmax(base.size()), bmin(base.size());
    for (double r : res.radii) {
        const int ri = static_cast<int>(std::floor(r / g.h + 1e-9));
        const int rk = static_cast<int>(std::floor(r * r / g.dt + 1e-9));

        // backward in time
        for (int p = 0; p < nodes; ++p) {
            line_extrema(base.data() + p, base.data() + p, nodes, nt, rk, 0, false, amax.data() + p, amin.data() + p);
        }
        // along x1
        for (int k = 0; k < nt; ++k) {
            for (int j = 0; j < (g.dim == 2 ? n : 1); ++j) {
                const std::size_t off = static_cast<std::size_t>(k) * nodes + static_cast<std::size_t>(j) * n;
                line_extrema(amax.data() + off, amin.data() + off, 1, n, ri, ri, wrap, bmax.data() + off, bmin.data() + off);
            }
        }
        const std::vector<double>* fmax = &bmax;
        const std::vector<double>* fmin = &bmin;
        // along x2
        if (g.dim == 2) {
            for (int k = 0; k < nt; ++k) {
                for (int i = 0; i < n; ++i) {
                    const std::size_t off = static_cast<std::size_t>(k) * nodes + i;
                    line_extrema(bmax.data() + off, bmin.data() + off, n, n, ri, ri, false, amax.data() + off, amin.data() + off);
                }
            }
            fmax = &amax;
            fmin = &amin;
        }
        double osc = 0.0;
        for (std::size_t q = 0; q < base.size(); ++q) osc = std::max(osc, (*fmax)[q] - (*fmin)[q]);
        res.oscillation.push_back(osc);
    }

    int positive = 0;
    for (double o : res.oscillation) positive += o > 0.0 ? 1 : 0;
    if (positive >= 4) {
        res.fit = fit_loglog(res.radii, res.oscillation, 4);
        res.has_fit = true;
    }
    return res;
}

ModulusResult time_derivative_modulus(const SolveResult& result, std::span<const double> radii, const ModulusOptions& opts) {
    return time_derivative_modulus(result.v, radii, opts);
}

}  // namespace parobs
