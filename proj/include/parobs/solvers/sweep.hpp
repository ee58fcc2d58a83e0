#pragma once

#include "parobs/solvers/problem.hpp"

#include <optional>
#include <vector>

namespace parobs {

struct SweepRow {
    double eps = 0.0;
    std::optional<double> error_vs_reference;  ///< max |u_eps - u_ref|; absent without an oracle
    double min_gap = 0.0;                      ///< min over levels >= 1
    double max_complementarity = 0.0;
    double max_residual = 0.0;
    int newton_total = 0;
};

struct SweepTable {
    std::vector<SweepRow> rows;
};

/// Re-solves `spec` for each eps (other penalty parameters kept). Rows run on
/// up to `jobs` threads; results are placed by index so the table is deterministic.
/// eps_list must be strictly decreasing with at least 3 entries (SpecInvalid).
/// The reference solve is skipped for DynamicThin.
SweepTable eps_sweep(const ProblemSpec& spec, const Grid& grid, const std::vector<double>& eps_list, int jobs = 1);

}  // namespace parobs
