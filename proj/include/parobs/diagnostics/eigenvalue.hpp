#pragma once

namespace parobs {

enum class SlitConstraint {
    None,      ///< natural conditions everywhere
    HalfLine,  ///< w = 0 on {x2 = 0, x1 <= 0}
    FullLine,  ///< w = 0 on {x2 = 0}
};

struct EigenEstimate {
    double lambda = 0.0;
    int iterations = 0;
    double residual = 0.0;  ///< |K x - lambda M x|_inf / |M x|_inf at exit
};

/// Smallest value of int |grad w|^2 e^{-|y|^2/4} / int w^2 e^{-|y|^2/4} over
/// bilinear elements on [-R, R] x [0, R] (h = 2R / n, n even), by shifted
/// inverse iteration on the weighted stiffness/mass pair. Requires R >= 5 and
/// n >= 64 (SpecInvalid). Throws IterationStalled without convergence.
EigenEstimate estimate_halfspace_eigenvalue(double R, int n, SlitConstraint constraint = SlitConstraint::HalfLine,
                                            int max_iters = 2000);

}  // namespace parobs
