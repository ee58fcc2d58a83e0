#include "parobs/oracle/reference.hpp"

#include "parobs/core/error.hpp"
#include "parobs/solvers/march.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace parobs {

std::vector<int> oracle_unknowns(const Grid& grid) {
    std::vector<int> out;
    for (int node = 0; node < grid.nodes(); ++node) {
        if (!grid.is_dirichlet(node)) out.push_back(node);
    }
    return out;
}

namespace {

CsrMatrix dense_fractional(const Grid& grid, double s, double dt) {
    const int n = grid.n_space;
    const double L = grid.extent[0].length();
    // first column of the circulant; entry depends on (i - j) mod n only
    std::vector<double> c(n, 0.0);
    for (int d = 0; d < n; ++d) {
        double acc = 0.0;
        for (int m = 0; m < n; ++m) {
            const int mm = m <= n / 2 ? m : m - n;
            const double k = 2.0 * std::numbers::pi * mm / L;
            if (mm == 0) continue;
            acc += std::pow(k * k, s) * std::cos(k * d * grid.h);
        }
        c[d] = acc / n;
    }
    CsrMatrix A;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const int d = ((i - j) % n + n) % n;
            A.push(j, (i == j ? 1.0 : 0.0) + dt * c[d]);
        }
        A.end_row();
    }
    return A;
}

}  // namespace

LcpStepProblem reference_step_problem(const ProblemSpec& spec, const Grid& grid, std::span<const double> u_prev,
                                      int k_next) {
    LcpStepProblem p;
    const auto psi = spec.data.psi.slice(k_next);
    const auto lat = spec.data.lateral.slice(k_next);

    if (spec.prototype == Prototype::Fractional) {
        p.op = dense_fractional(grid, spec.s.value(), grid.dt);
        p.rhs.assign(u_prev.begin(), u_prev.end());
        p.obstacle.assign(psi.begin(), psi.end());
        p.constrained.assign(grid.nodes(), 1);
        return p;
    }
    if (spec.prototype == Prototype::DynamicThin) {
        throw Error(ErrorKind::SpecInvalid, "no reference solver for the dynamic prototype");
    }

    const std::vector<int> unk = oracle_unknowns(grid);
    std::vector<int> pos(grid.nodes(), -1);
    for (std::size_t q = 0; q < unk.size(); ++q) pos[unk[q]] = static_cast<int>(q);
    const double a = grid.dt / (grid.h * grid.h);
    const bool thin = spec.prototype == Prototype::Signorini;

    for (std::size_t q = 0; q < unk.size(); ++q) {
        const int node = unk[q];
        const int i = grid.i_of(node);
        const int j = grid.j_of(node);
        const bool gamma = thin && j == 0;
        const double w = gamma ? 0.5 : 1.0;

        double rhs = w * u_prev[node];
        std::vector<std::pair<int, double>> nb;
        if (grid.dim == 1) {
            nb = {{node - 1, a}, {node + 1, a}};
        } else {
            nb = {{grid.index(i - 1, j), a}, {grid.index(i + 1, j), a}, {grid.index(i, j + 1), a}};
            if (j > 0) {
                nb.emplace_back(grid.index(i, j - 1), a);
            } else {
                nb.back().second = 2.0 * a;  // reflected ghost doubles the inward neighbour
            }
        }
        const double centre = grid.dim == 1 ? 1.0 + 2.0 * a : 1.0 + 4.0 * a;
        std::sort(nb.begin(), nb.end());
        bool diag_done = false;
        for (const auto& [other, coef] : nb) {
            if (!diag_done && other > node) {
                p.op.push(static_cast<int>(q), w * centre);
                diag_done = true;
            }
            if (pos[other] >= 0) {
                p.op.push(pos[other], -w * coef);
            } else {
                rhs += w * coef * lat[other];
            }
        }
        if (!diag_done) p.op.push(static_cast<int>(q), w * centre);
        p.op.end_row();

        p.rhs.push_back(rhs);
        const bool constrained = thin ? gamma : true;
        p.constrained.push_back(constrained ? 1 : 0);
        p.obstacle.push_back(constrained ? psi[node] : -std::numeric_limits<double>::infinity());
    }
    return p;
}

PsorOptions reference_psor_options() {
    PsorOptions o;
    o.tol = 1e-12;
    return o;
}

SolveResult solve_reference(const ProblemSpec& spec, const Grid& grid, const PsorOptions& opts) {
    if (spec.prototype == Prototype::DynamicThin) {
        throw Error(ErrorKind::SpecInvalid, "solve_reference supports Thick, Signorini and Fractional");
    }
    validate_spec(spec, grid);
    SolveResult res;
    res.eps_used = 0.0;
    res.u = ScalarField(grid, "u_ref");
    std::copy(spec.data.phi0.begin(), spec.data.phi0.end(), res.u.slice(0).begin());

    const std::vector<int> unk =
        spec.prototype == Prototype::Fractional ? std::vector<int>{} : oracle_unknowns(grid);
    auto to_unknowns = [&](std::span<const double> full) {
        if (unk.empty()) return std::vector<double>(full.begin(), full.end());
        std::vector<double> z(unk.size());
        for (std::size_t q = 0; q < unk.size(); ++q) z[q] = full[unk[q]];
        return z;
    };

    for (int k = 1; k < grid.n_time; ++k) {
        const LcpStepProblem p = reference_step_problem(spec, grid, res.u.slice(k - 1), k);
        PsorResult sol;
        try {
            sol = psor_solve(p, opts, to_unknowns(res.u.slice(k - 1)));
        } catch (const SolverError& e) {
            throw SolverError(e.kind(), std::string(e.what()) + " (time level " + std::to_string(k) + ")",
                              e.last_residual(), k);
        }
        auto out = res.u.slice(k);
        const auto lat = spec.data.lateral.slice(k);
        if (unk.empty()) {
            std::copy(sol.z.begin(), sol.z.end(), out.begin());
        } else {
            std::copy(lat.begin(), lat.end(), out.begin());
            for (std::size_t q = 0; q < unk.size(); ++q) out[unk[q]] = sol.z[q];
        }

        StepRecord rec;
        rec.newton_iters = sol.iters;
        rec.residual = sol.defect;
        rec.complementarity_defect = lcp_complementarity(p, sol.z);
        rec.min_gap = std::numeric_limits<double>::infinity();
        const auto psi = spec.data.psi.slice(k);
        for (int n : contact_nodes(grid)) rec.min_gap = std::min(rec.min_gap, out[n] - psi[n]);
        res.per_step.push_back(rec);
    }
    res.v = time_derivative_gap(res.u, spec.data.psi);
    return res;
}

}  // namespace parobs
