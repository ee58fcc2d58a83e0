#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace parobs {

/// Compressed-row node coupling. Rows must hold a positive diagonal entry.
struct CsrMatrix {
    int n = 0;
    std::vector<int> row_ptr{0};
    std::vector<int> col;
    std::vector<double> val;

    void push(int c, double v) {
        col.push_back(c);
        val.push_back(v);
    }
    void end_row() {
        row_ptr.push_back(static_cast<int>(col.size()));
        ++n;
    }
    double row_dot(int i, std::span<const double> z) const {
        double s = 0.0;
        for (int p = row_ptr[i]; p < row_ptr[i + 1]; ++p) s += val[p] * z[col[p]];
        return s;
    }
    double diagonal(int i) const;
};

/// Find z with z >= obstacle on constrained nodes, r = Az - rhs >= 0 there,
/// r = 0 elsewhere, and (z - obstacle) r = 0.
struct LcpStepProblem {
    CsrMatrix op;
    std::vector<double> rhs;
    std::vector<double> obstacle;
    std::vector<std::uint8_t> constrained;
};

struct PsorOptions {
    double omega = 1.5;
    double tol = 1e-9;
    int max_iters = 200000;
    bool reverse = false;  ///< sweep the nodes last-to-first
};

struct PsorResult {
    std::vector<double> z;
    int iters = 0;
    double defect = 0.0;
};

/// Natural-map defect: |r| on free nodes, |min(z - obstacle, r)| on constrained ones.
double lcp_defect(const LcpStepProblem& p, std::span<const double> z);
/// max over constrained nodes of |(z - obstacle) r|.
double lcp_complementarity(const LcpStepProblem& p, std::span<const double> z);

/// Projected Gauss-Seidel with over-relaxation. `start` may be empty (then the
/// projection of zero is used). Throws SolverError(NotConverged) with the final defect.
PsorResult psor_solve(const LcpStepProblem& p, const PsorOptions& opts = {}, std::span<const double> start = {});

}  // namespace parobs
