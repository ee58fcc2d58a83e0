#include "parobs/diagnostics/free_boundary.hpp"

#include "parobs/core/error.hpp"

#include <algorithm>
#include <cmath>

namespace parobs {

std::vector<FreeBoundarySnapshot> extract_free_boundary(const ScalarField& u, const ScalarField& psi, double gap_tol) {
    u.check_shape();
    if (!(psi.grid == u.grid)) throw Error(ErrorKind::ShapeMismatch, "extract_free_boundary: grids differ");
    const Grid& g = u.grid;
    const std::vector<int> nodes = contact_nodes(g);
    std::vector<int> pos(g.nodes(), -1);
    for (std::size_t q = 0; q < nodes.size(); ++q) pos[nodes[q]] = static_cast<int>(q);
    const bool wrap = g.geometry == Geometry::PeriodicLine;
    const bool line = g.geometry == Geometry::HalfBoxWithGamma || g.dim == 1;

    std::vector<FreeBoundarySnapshot> out;
    out.reserve(g.n_time);
    for (int k = 0; k < g.n_time; ++k) {
        FreeBoundarySnapshot s;
        s.k = k;
        s.t = g.time(k);
        s.nodes = nodes;
        s.coincidence_mask.resize(nodes.size());
        std::vector<double> gap(nodes.size());
        for (std::size_t q = 0; q < nodes.size(); ++q) {
            gap[q] = u.at(k, nodes[q]) - psi.at(k, nodes[q]);
            s.coincidence_mask[q] = gap[q] <= gap_tol ? 1 : 0;
        }

        auto crossing = [&](int qa, int qb, int axis, double shift_b) {
            if (s.coincidence_mask[qa] == s.coincidence_mask[qb]) return;
            const double ga = gap[qa], gb = gap[qb];
            const double th = gb != ga ? std::clamp((gap_tol - ga) / (gb - ga), 0.0, 1.0) : 0.5;
            const int na = nodes[qa], nb = nodes[qb];
            const double xa1 = g.x1(na), xb1 = g.x1(nb) + shift_b;
            const double xa2 = g.x2(na), xb2 = g.x2(nb);
            s.interface_points.push_back({xa1 + th * (xb1 - xa1), xa2 + th * (xb2 - xa2), axis});
        };

        const int n = g.n_space;
        if (line) {
            for (int i = 0; i + 1 < n; ++i) crossing(i, i + 1, 0, 0.0);
            if (wrap) crossing(n - 1, 0, 0, g.extent[0].length());
        } else {
            for (int j = 0; j < n; ++j) {
                for (int i = 0; i < n; ++i) {
                    const int q = pos[g.index(i, j)];
                    if (i + 1 < n) crossing(q, pos[g.index(i + 1, j)], 0, 0.0);
                    if (j + 1 < n) crossing(q, pos[g.index(i, j + 1)], 1, 0.0);
                }
            }
        }
        std::sort(s.interface_points.begin(), s.interface_points.end(),
                  [](const InterfacePoint& a, const InterfacePoint& b) {
                      return a.x1 != b.x1 ? a.x1 < b.x1 : a.x2 < b.x2;
                  });
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<FreeBoundarySnapshot> extract_free_boundary(const SolveResult& result, const SampledData& data,
                                                        double gap_tol) {
    if (gap_tol < result.eps_used) {
        throw Error(ErrorKind::SpecInvalid, "gap_tol is thinner than the penalty layer eps");
    }
    return extract_free_boundary(result.u, data.psi, gap_tol);
}

DensityResult parabolic_density(const std::vector<FreeBoundarySnapshot>& snapshots, const Grid& grid,
                                InterfacePoint point, double t_point, std::span<const double> radii) {
    DensityResult res;
    res.radii.assign(radii.begin(), radii.end());
    res.c_hat = 1.0;
    const double ttol = 1e-9 * grid.dt;
    const bool wrap = grid.geometry == Geometry::PeriodicLine;
    const double L = grid.extent[0].length();
    for (double r : res.radii) {
        if (!(r >= 2.0 * grid.h * (1.0 - 1e-12))) {
            throw Error(ErrorKind::RadiiUnresolvable, "cylinder radius " + std::to_string(r) + " is below two cells");
        }
        long masked = 0, total = 0;
        for (const FreeBoundarySnapshot& s : snapshots) {
            if (s.t > t_point + ttol || s.t <= t_point - r * r + ttol) continue;
            for (std::size_t q = 0; q < s.nodes.size(); ++q) {
                double dx = grid.x1(s.nodes[q]) - point.x1;
                if (wrap) dx -= L * std::round(dx / L);
                // on Gamma the contact set is a line, so x2 drops out
                const double dy = grid.geometry == Geometry::HalfBoxWithGamma ? 0.0 : grid.x2(s.nodes[q]) - point.x2;
                if (dx * dx + dy * dy > r * r * (1.0 + 1e-12)) continue;
                ++total;
                masked += s.coincidence_mask[q];
            }
        }
        if (total == 0) throw Error(ErrorKind::RadiiUnresolvable, "backward cylinder holds no contact nodes");
        const double d = static_cast<double>(masked) / static_cast<double>(total);
        res.density.push_back(d);
        res.c_hat = std::min(res.c_hat, d);
    }
    return res;
}

}  // namespace parobs
