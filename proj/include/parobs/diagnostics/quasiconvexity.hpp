#pragma once

#include "parobs/solvers/problem.hpp"

namespace parobs {

struct QuasiconvexityResult {
    double utt_min = 0.0;    ///< min of the discrete u_tt over non-Dirichlet nodes, levels 1..n_time-2
    double utt_bound = 0.0;  ///< max(|psi_tt|_inf, |Lap^2 phi|_inf)
    double pass_margin = 0.0;
    int argmin_k = -1;
    int argmin_node = -1;
    /// Split of the available quotient nodes into the discrete parabolic
    /// boundary (first available level or a Dirichlet node) and the rest.
    double boundary_min = 0.0;
    double interior_min = 0.0;
};

/// Throws MissingDerivativeData when psi_tt or Lap^2 phi is absent.
QuasiconvexityResult quasiconvexity_check(const SolveResult& result, const SampledData& data);

/// Same scan on a bare field (no bound is computed: utt_bound = 0).
QuasiconvexityResult quasiconvexity_scan(const ScalarField& u);

}  // namespace parobs
