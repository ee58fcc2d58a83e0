#pragma once

#include "parobs/diagnostics/fit.hpp"
#include "parobs/solvers/problem.hpp"

#include <limits>
#include <span>
#include <vector>

namespace parobs {

struct ModulusOptions {
    bool positive_part = true;
    /// Levels before t_min are ignored, both as centres and inside windows.
    double t_min = -std::numeric_limits<double>::infinity();
};

struct ModulusResult {
    std::vector<double> radii;
    std::vector<double> oscillation;
    bool has_fit = false;  ///< needs four radii with positive oscillation
    LineFit fit;           ///< slope = Hoelder exponent estimate
};

/// For each r: max over centres (x0, t0) of (max - min) of v (or v^+) over the
/// backward window {|x - x0|_inf <= r, t0 - r^2 <= t <= t0} cut to the grid.
/// Throws RadiiUnresolvable if some r < 2h.
ModulusResult time_derivative_modulus(const ScalarField& v, std::span<const double> radii,
                                      const ModulusOptions& opts = {});
ModulusResult time_derivative_modulus(const SolveResult& result, std::span<const double> radii,
                                      const ModulusOptions& opts = {});

}  // namespace parobs
