#pragma once

#include "parobs/solvers/problem.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace parobs {

struct InterfacePoint {
    double x1 = 0.0;
    double x2 = 0.0;
    int axis = 0;  ///< lattice axis along which the crossing was found
};

struct FreeBoundarySnapshot {
    int k = 0;
    double t = 0.0;
    std::vector<int> nodes;                   ///< contact-set nodes, in order
    std::vector<std::uint8_t> coincidence_mask;  ///< per entry of `nodes`: u - psi <= gap_tol
    std::vector<InterfacePoint> interface_points;
};

/// Per time level: masks the contact set and places interface points between
/// masked and unmasked neighbours where (u - psi) crosses gap_tol, by linear
/// interpolation. The contact set is Gamma on half boxes and every node otherwise.
std::vector<FreeBoundarySnapshot> extract_free_boundary(const ScalarField& u, const ScalarField& psi, double gap_tol);

/// Same on a solve; gap_tol below the penalty width eps_used is rejected (SpecInvalid).
std::vector<FreeBoundarySnapshot> extract_free_boundary(const SolveResult& result, const SampledData& data,
                                                        double gap_tol);

struct DensityResult {
    std::vector<double> radii;
    std::vector<double> density;
    double c_hat = 0.0;
};

/// Fraction of masked contact nodes inside the backward cylinder
/// {|x - x_p| <= r} x (t_p - r^2, t_p], counted over the snapshots' levels.
/// Throws RadiiUnresolvable for r < 2h or an empty cylinder.
DensityResult parabolic_density(const std::vector<FreeBoundarySnapshot>& snapshots, const Grid& grid,
                                InterfacePoint point, double t_point, std::span<const double> radii);

}  // namespace parobs
