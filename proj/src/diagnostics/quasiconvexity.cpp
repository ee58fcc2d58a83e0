#include "parobs/diagnostics/quasiconvexity.hpp"

#include "parobs/core/error.hpp"
#include "parobs/core/stencil.hpp"

#include <algorithm>
#include <limits>

namespace parobs {

QuasiconvexityResult quasiconvexity_scan(const ScalarField& u) {
    const Grid& g = u.grid;
    if (g.n_time < 3) throw Error(ErrorKind::StepTooLarge, "quasi-convexity needs three time levels");
    const QuotientField q = second_incremental_quotient(u, {0, 0, 1}, 1);

    constexpr double inf = std::numeric_limits<double>::infinity();
    QuasiconvexityResult r;
    r.utt_min = inf;
    r.boundary_min = inf;
    r.interior_min = inf;
    for (int k = 1; k + 1 < g.n_time; ++k) {
        for (int n = 0; n < g.nodes(); ++n) {
            const double v = q.values.at(k, n);
            const bool dirichlet = g.is_dirichlet(n);
            if (!dirichlet && v < r.utt_min) {
                r.utt_min = v;
                r.argmin_k = k;
                r.argmin_node = n;
            }
            if (dirichlet || k == 1) {
                r.boundary_min = std::min(r.boundary_min, v);
            } else {
                r.interior_min = std::min(r.interior_min, v);
            }
        }
    }
    return r;
}

QuasiconvexityResult quasiconvexity_check(const SolveResult& result, const SampledData& data) {
    if (data.psi_tt.empty()) throw Error(ErrorKind::MissingDerivativeData, "psi_tt was not supplied");
    if (data.bilap_phi.empty()) throw Error(ErrorKind::MissingDerivativeData, "Lap^2 phi was not supplied");
    QuasiconvexityResult r = quasiconvexity_scan(result.u);
    r.utt_bound = std::max(max_abs(data.psi_tt.values), max_abs(data.bilap_phi));
    r.pass_margin = r.utt_min + r.utt_bound;
    return r;
}

}  // namespace parobs
