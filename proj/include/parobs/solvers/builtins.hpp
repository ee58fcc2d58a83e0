#pragma once

#include "parobs/solvers/problem.hpp"

#include <optional>
#include <string>
#include <vector>

namespace parobs {

/// Overrides applied on top of a built-in's defaults.
struct BuiltinOptions {
    std::optional<int> n_space;
    std::optional<int> n_time;
    std::optional<double> eps;
    std::optional<double> scale;
    std::optional<double> s;      ///< Fractional only
    std::optional<double> alpha;  ///< DynamicThin only
};

struct Builtin {
    ProblemSpec spec;
    Grid grid;
};

/// unconstrained-heat, thick-active, thick-smooth, signorini-stationary,
/// signorini-traveling, fractional-active, dynamic-caloric
const std::vector<std::string>& builtin_names();
bool is_builtin(const std::string& name);

/// Throws ConfigInvalid for an unknown name.
Builtin make_builtin(const std::string& name, const BuiltinOptions& opts = {});

/// Parameters of the traveling built-in, exposed for the diagnostics.
struct TravelingParams {
    double omega = 0.3;
    double half_width = 0.05;  ///< x1 in [-d, d], x2 in [0, 2d], t in [-d, d]
};
TravelingParams traveling_params();

/// Amplitude of the interior bump subtracted from the stationary profile at t0.
double stationary_bump_amplitude();

}  // namespace parobs
