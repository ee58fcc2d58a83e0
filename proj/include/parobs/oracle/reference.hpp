#pragma once

#include "parobs/oracle/psor.hpp"
#include "parobs/solvers/problem.hpp"

#include <span>
#include <vector>

namespace parobs {

/// Unknown numbering used by the oracle: every non-Dirichlet node, in node order.
std::vector<int> oracle_unknowns(const Grid& grid);

/// Backward-Euler obstacle step as an LCP over `oracle_unknowns(grid)`.
/// Thick: I - dt Lap on all nodes. Signorini: zero-flux operator with Gamma
/// rows halved, constraint on Gamma only. Fractional: I + dt A with the dense
/// circulant A_ij = (1/N) sum_m |k_m|^{2s} cos(k_m (x_i - x_j)).
LcpStepProblem reference_step_problem(const ProblemSpec& spec, const Grid& grid, std::span<const double> u_prev,
                                      int k_next);

/// PSOR settings used by solve_reference: the LCP defect is driven to 1e-12
/// so that the complementarity products stay below 1e-9 for O(10) gaps.
PsorOptions reference_psor_options();

/// Obstacle problem without penalization, PSOR at each step (warm-started).
/// Per-step records: newton_iters = PSOR sweeps, residual = LCP defect,
/// complementarity_defect = max |(u - psi) r| on the constraint set.
/// Throws SolverError(NotConverged) with the time level.
SolveResult solve_reference(const ProblemSpec& spec, const Grid& grid, const PsorOptions& opts = reference_psor_options());

}  // namespace parobs
