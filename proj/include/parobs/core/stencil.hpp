#pragma once

#include "parobs/core/field.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace parobs {

/// Centered 3-point (1D) or 5-point (2D) Laplacian of one spatial slice.
///
/// Dirichlet nodes get 0. On HalfBoxWithGamma the Gamma row reads its missing
/// neighbour from `ghost` (one value per x1 node, the row x2 = -h); an empty
/// ghost layer means even reflection, i.e. a zero-flux face. PeriodicLine wraps.
std::vector<double> fd_laplacian(std::span<const double> slice, const Grid& grid,
                                 std::span<const double> ghost = {});

/// Integer lattice offset (in nodes along x1, x2 and in time levels).
struct LatticeOffset {
    int di = 0;
    int dj = 0;
    int dk = 0;
};

struct QuotientField {
    ScalarField values;                ///< zero where unavailable
    std::vector<std::uint8_t> available;

    bool is_available(int k, int node) const {
        return available[static_cast<std::size_t>(k) * values.grid.nodes() + node] != 0;
    }
};

/// (u(z+w) + u(z-w) - 2u(z)) / |w|^2 with w = step * offset in physical units.
/// Nodes whose two neighbours do not both exist are marked unavailable.
/// Throws StepTooLarge when no node qualifies.
QuotientField second_incremental_quotient(const ScalarField& field, LatticeOffset offset, int step = 1);

struct QuotientMinimum {
    double value = 0.0;
    int k = -1;
    int node = -1;
};

/// Smallest available quotient value; ties resolve to the earliest (k, node).
QuotientMinimum min_second_quotient(const QuotientField& q);

}  // namespace parobs
