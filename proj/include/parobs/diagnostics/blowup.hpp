#pragma once

#include "parobs/diagnostics/fit.hpp"
#include "parobs/diagnostics/monotonicity.hpp"

#include <span>
#include <vector>

namespace parobs {

struct BlowupLattice {
    int n_space = 65;  ///< per axis; 2D lattice is [-1,1] x [0,2], 1D is [-1,1]
    int n_time = 65;   ///< t in [-1, 1]
};

/// u_r(x, t) = u(p + (r x, r t)) / r^{3/2} sampled on the reference lattice by
/// bilinear interpolation in space and linear in time.
/// Throws WindowOutsideGrid if the scaled window leaves u's grid.
ScalarField hyperbolic_blowup(const ScalarField& u, SpaceTimePoint p, double r, const BlowupLattice& lattice = {});

struct ProfileFit {
    double omega_hat = 0.0;
    double rotation_hat = 0.0;
    double linf_error = 0.0;     ///< max |rescaled - profile| over the compared region
    double linf_relative = 0.0;  ///< linf_error / max |profile| on that region
};

/// Best traveling thin-obstacle profile in the max norm over {x2 <= x2_max}:
/// grid search on omega in [-2, 2] (step 0.01) and rotation in [-pi/4, pi/4],
/// then golden-section refinement of each parameter.
ProfileFit fit_blowup_profile(const ScalarField& rescaled, double x2_max = 0.5);

struct NondegeneracyResult {
    std::vector<double> radii;
    std::vector<double> sup;  ///< S(r) = max |u| over the space-time ball B*_r(p)
    double l_hat = 0.0;       ///< geometric mean of S(r) / r^{3/2} over the four smallest radii
    bool has_fit = false;
    LineFit fit;              ///< slope = growth exponent of S
    bool degenerate = true;   ///< l_hat == 0 or growth exponent above 7/4
};

/// Throws RadiiUnresolvable if fewer than four radii are given, a radius is
/// below two cells, or a ball leaves the grid (the x2 >= 0 cut is allowed).
NondegeneracyResult nondegeneracy_l(const ScalarField& u, SpaceTimePoint p, std::span<const double> radii);

}  // namespace parobs
