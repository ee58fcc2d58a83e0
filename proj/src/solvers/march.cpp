#include "parobs/solvers/march.hpp"

#include "parobs/core/error.hpp"
#include "parobs/solvers/steppers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace parobs {

ScalarField time_derivative_gap(const ScalarField& u, const ScalarField& psi) {
    const Grid& g = u.grid;
    if (!(psi.grid == g)) throw Error(ErrorKind::ShapeMismatch, "time_derivative_gap: grids differ");
    ScalarField v(g, "v");
    const int last = g.n_time - 1;
    for (int k = 0; k <= last; ++k) {
        const int lo = k == 0 ? 0 : k - 1;
        const int hi = k == last ? last : k + 1;
        const double span = (hi - lo) * g.dt;
        for (int n = 0; n < g.nodes(); ++n) {
            v.at(k, n) = ((u.at(hi, n) - psi.at(hi, n)) - (u.at(lo, n) - psi.at(lo, n))) / span;
        }
    }
    return v;
}

StepRecord contact_record(const Grid& grid, std::span<const double> u, std::span<const double> psi,
                          const PenaltyParams& penalty) {
    StepRecord rec;
    rec.min_gap = std::numeric_limits<double>::infinity();
    for (int n : contact_nodes(grid)) {
        const double gap = u[n] - psi[n];
        rec.min_gap = std::min(rec.min_gap, gap);
        rec.complementarity_defect =
            std::max(rec.complementarity_defect, std::abs(gap * beta_and_prime(penalty, gap).beta));
    }
    return rec;
}

SolveResult march(const ProblemSpec& spec, const Grid& grid) {
    validate_spec(spec, grid);
    SolveResult res;
    res.eps_used = spec.eps.eps;
    res.u = ScalarField(grid, "u");
    std::copy(spec.data.phi0.begin(), spec.data.phi0.end(), res.u.slice(0).begin());

    Stepper stepper(spec, grid);
    res.per_step.reserve(grid.n_time - 1);
    for (int k = 1; k < grid.n_time; ++k) {
        StepOutcome out;
        try {
            out = stepper.step(res.u.slice(k - 1), k);
        } catch (const SolverError& e) {
            throw SolverError(e.kind(), std::string(e.what()) + " (time level " + std::to_string(k) + ")",
                              e.last_residual(), k);
        }
        std::copy(out.u.begin(), out.u.end(), res.u.slice(k).begin());
        StepRecord rec = contact_record(grid, out.u, spec.data.psi.slice(k), spec.eps);
        rec.newton_iters = out.newton_iters;
        rec.residual = out.residual;
        res.per_step.push_back(rec);
    }
    if (!res.u.all_finite()) throw SolverError(ErrorKind::NewtonDiverged, "non-finite values in solution", 0.0);
    res.v = time_derivative_gap(res.u, spec.data.psi);
    return res;
}

}  // namespace parobs
