#include "parobs/core/stencil.hpp"

#include "parobs/core/error.hpp"

#include <cmath>
#include <limits>

namespace parobs {

std::vector<double> fd_laplacian(std::span<const double> slice, const Grid& grid,
                                 std::span<const double> ghost) {
    if (static_cast<int>(slice.size()) != grid.nodes()) {
        throw Error(ErrorKind::ShapeMismatch, "fd_laplacian: slice length does not match grid");
    }
    if (!ghost.empty() && static_cast<int>(ghost.size()) != grid.n_space) {
        throw Error(ErrorKind::ShapeMismatch, "fd_laplacian: ghost layer needs one value per x1 node");
    }
    const int n = grid.n_space;
    const double ih2 = 1.0 / (grid.h * grid.h);
    std::vector<double> out(slice.size(), 0.0);

    if (grid.dim == 1) {
        const bool periodic = grid.geometry == Geometry::PeriodicLine;
        for (int i = 0; i < n; ++i) {
            if (!periodic && (i == 0 || i == n - 1)) continue;
            const int l = i == 0 ? n - 1 : i - 1;
            const int r = i == n - 1 ? 0 : i + 1;
            out[i] = (slice[l] - 2.0 * slice[i] + slice[r]) * ih2;
        }
        return out;
    }

    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const int node = grid.index(i, j);
            if (grid.is_dirichlet(node)) continue;
            const double c = slice[node];
            double below;
            if (j > 0) {
                below = slice[grid.index(i, j - 1)];
            } else {
                below = ghost.empty() ? slice[grid.index(i, 1)] : ghost[i];
            }
            out[node] = (slice[node - 1] + slice[node + 1] + below + slice[grid.index(i, j + 1)] - 4.0 * c) * ih2;
        }
    }
    return out;
}

QuotientField second_incremental_quotient(const ScalarField& field, LatticeOffset offset, int step) {
    field.check_shape();
    const Grid& g = field.grid;
    const int di = offset.di * step;
    const int dj = offset.dj * step;
    const int dk = offset.dk * step;
    if (di == 0 && dj == 0 && dk == 0) {
        throw Error(ErrorKind::StepTooLarge, "second_incremental_quotient: zero offset");
    }
    if (g.dim == 1 && dj != 0) {
        throw Error(ErrorKind::StepTooLarge, "second_incremental_quotient: x2 offset on a 1D grid");
    }
    const double w2 = (di * g.h) * (di * g.h) + (dj * g.h) * (dj * g.h) + (dk * g.dt) * (dk * g.dt);
    const bool periodic = g.geometry == Geometry::PeriodicLine;
    const int n = g.n_space;

    QuotientField q{ScalarField(g, field.label + "_q2"), std::vector<std::uint8_t>(field.values.size(), 0)};
    std::size_t count = 0;

    auto shift = [&](int i, int j, int si, int sj, int& node) {
        int ii = i + si;
        const int jj = j + sj;
        if (periodic) {
            ii = ((ii % n) + n) % n;
        } else if (ii < 0 || ii >= n) {
            return false;
        }
        if (jj < 0 || jj >= (g.dim == 1 ? 1 : n)) return false;
        node = g.index(ii, jj);
        return true;
    };

    for (int k = 0; k < g.n_time; ++k) {
        if (k - dk < 0 || k - dk >= g.n_time || k + dk < 0 || k + dk >= g.n_time) continue;
        for (int node = 0; node < g.nodes(); ++node) {
            const int i = g.i_of(node);
            const int j = g.j_of(node);
            int plus = 0;
            int minus = 0;
            if (!shift(i, j, di, dj, plus) || !shift(i, j, -di, -dj, minus)) continue;
            const double v = (field.at(k + dk, plus) + field.at(k - dk, minus) - 2.0 * field.at(k, node)) / w2;
            q.values.at(k, node) = v;
            q.available[static_cast<std::size_t>(k) * g.nodes() + node] = 1;
            ++count;
        }
    }
    if (count == 0) {
        throw Error(ErrorKind::StepTooLarge, "second_incremental_quotient: no node has both neighbours");
    }
    return q;
}

QuotientMinimum min_second_quotient(const QuotientField& q) {
    QuotientMinimum best;
    best.value = std::numeric_limits<double>::infinity();
    const Grid& g = q.values.grid;
    for (int k = 0; k < g.n_time; ++k) {
        for (int node = 0; node < g.nodes(); ++node) {
            if (!q.is_available(k, node)) continue;
            const double v = q.values.at(k, node);
            if (v < best.value) best = {v, k, node};
        }
    }
    return best;
}

}  // namespace parobs
