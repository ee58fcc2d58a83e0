#pragma once

#include "parobs/diagnostics/fit.hpp"
#include "parobs/diagnostics/free_boundary.hpp"

#include <span>
#include <vector>

namespace parobs {

struct GradientHolderResult {
    std::vector<double> radii;
    std::vector<double> grad_sup;    ///< M(d) = sup |grad_h (u - psi~)| within parabolic distance d
    std::vector<double> normal_sup;  ///< same for |d u / d x2| on Gamma (half boxes only)
    LineFit fit;
    bool has_normal_fit = false;
    LineFit normal_fit;
};

/// Parabolic distance from a node at level k to the interface: the minimum over
/// snapshot levels k' of sqrt(|x - y|^2 + |t_k - t_k'|) with y an interface
/// point of level k'. Only the snapshots' levels are scanned.
/// Gradients: centred differences, second-order one-sided at edges and on Gamma.
/// Throws EmptyFreeBoundary if no snapshot has an interface point.
GradientHolderResult holder_exponent_gradient(const ScalarField& u, const ScalarField& psi,
                                              const std::vector<FreeBoundarySnapshot>& snapshots,
                                              std::span<const double> radii);

}  // namespace parobs
