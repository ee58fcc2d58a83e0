#pragma once

#include "parobs/solvers/problem.hpp"

namespace parobs {

/// Runs the prototype's stepper over every time level.
/// Stepper failures are rethrown as SolverError carrying the failing level.
SolveResult march(const ProblemSpec& spec, const Grid& grid);

/// Centered time differences of (u - psi), one-sided at the first and last level.
ScalarField time_derivative_gap(const ScalarField& u, const ScalarField& psi);

/// Complementarity defect and minimum gap of one slice over the contact set.
StepRecord contact_record(const Grid& grid, std::span<const double> u, std::span<const double> psi,
                          const PenaltyParams& penalty);

}  // namespace parobs
