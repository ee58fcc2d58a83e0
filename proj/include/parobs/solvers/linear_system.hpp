#pragma once

#include "parobs/core/grid.hpp"
#include "parobs/penalty/penalty.hpp"
#include "parobs/solvers/problem.hpp"

#include <Eigen/Sparse>

#include <span>
#include <utility>
#include <vector>

namespace parobs {

/// Backward-Euler step written over the non-Dirichlet nodes as
///
///   F(u) = A u + D u_D - mass * u_prev + pen * beta(u - psi) = 0,
///
/// with A = diag(mass) - dt L symmetric positive definite. Gamma rows carry the
/// ghost-node closure and are multiplied by 1/2 so that A stays symmetric;
/// `row_weight` undoes that scaling when residuals are reported.
struct SteppingSystem {
    Grid grid;
    Prototype prototype = Prototype::Thick;
    std::vector<int> slot_of;  ///< node -> unknown index, -1 for Dirichlet nodes
    std::vector<int> node_of;  ///< unknown index -> node
    Eigen::SparseMatrix<double> A;
    std::vector<int> diag_pos;  ///< position of A(s,s) in A.valuePtr()
    std::vector<double> mass;
    std::vector<double> pen;
    std::vector<double> row_weight;
    std::vector<std::vector<std::pair<int, double>>> dirichlet;  ///< per unknown: (node, coefficient)
};

/// alpha is read only for DynamicThin.
SteppingSystem build_stepping_system(const Grid& grid, Prototype prototype, double alpha = 0.0);

struct StepOutcome {
    std::vector<double> u;  ///< full slice, Dirichlet values imposed
    int newton_iters = 0;
    double residual = 0.0;  ///< max |F| / row_weight, in units of u
};

struct NewtonOptions {
    int max_iters = 50;
    int max_halvings = 10;
    double rel_tol = 1e-10;
};

/// Damped Newton for one step. All spans are full spatial slices.
/// Throws SolverError(NewtonDiverged) with the last residual.
StepOutcome newton_step(const SteppingSystem& sys, std::span<const double> u_prev, std::span<const double> psi_next,
                        std::span<const double> lateral_next, const PenaltyParams& penalty,
                        const NewtonOptions& opts = {});

/// Evaluates the scaled residual max |F| / row_weight at a given full slice.
double step_residual(const SteppingSystem& sys, std::span<const double> u, std::span<const double> u_prev,
                     std::span<const double> psi_next, const PenaltyParams& penalty);

}  // namespace parobs
