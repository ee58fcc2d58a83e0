#include "parobs/oracle/psor.hpp"

#include "parobs/core/error.hpp"

#include <algorithm>
#include <cmath>

namespace parobs {

double CsrMatrix::diagonal(int i) const {
    for (int p = row_ptr[i]; p < row_ptr[i + 1]; ++p) {
        if (col[p] == i) return val[p];
    }
    return 0.0;
}

double lcp_defect(const LcpStepProblem& p, std::span<const double> z) {
    double d = 0.0;
    for (int i = 0; i < p.op.n; ++i) {
        const double r = p.op.row_dot(i, z) - p.rhs[i];
        d = std::max(d, p.constrained[i] ? std::abs(std::min(z[i] - p.obstacle[i], r)) : std::abs(r));
    }
    return d;
}

double lcp_complementarity(const LcpStepProblem& p, std::span<const double> z) {
    double d = 0.0;
    for (int i = 0; i < p.op.n; ++i) {
        if (!p.constrained[i]) continue;
        const double r = p.op.row_dot(i, z) - p.rhs[i];
        d = std::max(d, std::abs((z[i] - p.obstacle[i]) * r));
    }
    return d;
}

PsorResult psor_solve(const LcpStepProblem& p, const PsorOptions& opts, std::span<const double> start) {
    const int n = p.op.n;
    if (static_cast<int>(p.rhs.size()) != n || static_cast<int>(p.obstacle.size()) != n ||
        static_cast<int>(p.constrained.size()) != n) {
        throw Error(ErrorKind::ShapeMismatch, "psor_solve: problem vectors do not match the operator");
    }
    if (!(opts.omega > 0.0 && opts.omega < 2.0)) throw Error(ErrorKind::SpecInvalid, "psor_solve: omega must lie in (0,2)");
    if (!(opts.tol > 0.0)) throw Error(ErrorKind::SpecInvalid, "psor_solve: tol must be positive");

    std::vector<double> diag(n);
    for (int i = 0; i < n; ++i) {
        diag[i] = p.op.diagonal(i);
        if (!(diag[i] > 0.0)) throw Error(ErrorKind::SpecInvalid, "psor_solve: non-positive diagonal entry");
    }

    PsorResult res;
    res.z.assign(n, 0.0);
    if (!start.empty()) std::copy(start.begin(), start.end(), res.z.begin());
    for (int i = 0; i < n; ++i) {
        if (p.constrained[i]) res.z[i] = std::max(res.z[i], p.obstacle[i]);
    }

    // Checking the defect costs a full product, so do it every few sweeps.
    constexpr int kCheckEvery = 4;
    for (int it = 0;; ++it) {
        if (it % kCheckEvery == 0) {
            res.defect = lcp_defect(p, res.z);
            res.iters = it;
            if (res.defect <= opts.tol) return res;
            if (it >= opts.max_iters) {
                throw SolverError(ErrorKind::NotConverged,
                                  "PSOR reached " + std::to_string(opts.max_iters) + " sweeps", res.defect);
            }
        }
        for (int q = 0; q < n; ++q) {
            const int i = opts.reverse ? n - 1 - q : q;
            const double r = p.op.row_dot(i, res.z) - p.rhs[i];
            double zi = res.z[i] - opts.omega * r / diag[i];
            if (p.constrained[i]) zi = std::max(zi, p.obstacle[i]);
            res.z[i] = zi;
        }
    }
}

}  // namespace parobs
