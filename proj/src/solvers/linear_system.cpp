#include "parobs/solvers/linear_system.hpp"

#include "parobs/core/error.hpp"
#include "parobs/core/field.hpp"

#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>

namespace parobs {

SteppingSystem build_stepping_system(const Grid& grid, Prototype prototype, double alpha) {
    if (grid.geometry != required_geometry(prototype) || prototype == Prototype::Fractional) {
        throw Error(ErrorKind::GeometryMismatch, "build_stepping_system: prototype/grid mismatch");
    }
    SteppingSystem sys;
    sys.grid = grid;
    sys.prototype = prototype;
    sys.slot_of.assign(grid.nodes(), -1);
    for (int node = 0; node < grid.nodes(); ++node) {
        if (!grid.is_dirichlet(node)) {
            sys.slot_of[node] = static_cast<int>(sys.node_of.size());
            sys.node_of.push_back(node);
        }
    }
    const int m = static_cast<int>(sys.node_of.size());
    sys.mass.assign(m, 1.0);
    sys.pen.assign(m, 0.0);
    sys.row_weight.assign(m, 1.0);
    sys.dirichlet.assign(m, {});

    const double dt = grid.dt;
    const double h = grid.h;
    const double lam = dt / (h * h);
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(m) * 5);

    auto couple = [&](int s, int nb, double coef) {
        if (sys.slot_of[nb] >= 0) {
            trip.emplace_back(s, sys.slot_of[nb], coef);
        } else {
            sys.dirichlet[s].emplace_back(nb, coef);
        }
    };

    for (int s = 0; s < m; ++s) {
        const int node = sys.node_of[s];
        const int i = grid.i_of(node);
        if (grid.dim == 1) {
            sys.pen[s] = dt;
            trip.emplace_back(s, s, 1.0 + 2.0 * lam);
            couple(s, node - 1, -lam);
            couple(s, node + 1, -lam);
            continue;
        }
        const int j = grid.j_of(node);
        if (grid.is_gamma(node)) {
            const double c = 0.5;
            double mass = 1.0;
            if (prototype == Prototype::DynamicThin) mass += 2.0 * alpha / h;
            sys.mass[s] = c * mass;
            sys.pen[s] = c * 2.0 * dt / h;
            sys.row_weight[s] = c;
            trip.emplace_back(s, s, c * (mass + 4.0 * lam));
            couple(s, node - 1, -c * lam);
            couple(s, node + 1, -c * lam);
            couple(s, grid.index(i, 1), -c * 2.0 * lam);
            continue;
        }
        if (prototype == Prototype::Thick) sys.pen[s] = dt;
        trip.emplace_back(s, s, 1.0 + 4.0 * lam);
        couple(s, node - 1, -lam);
        couple(s, node + 1, -lam);
        couple(s, grid.index(i, j - 1), -lam);
        couple(s, grid.index(i, j + 1), -lam);
    }

    sys.A.resize(m, m);
    sys.A.setFromTriplets(trip.begin(), trip.end());
    sys.A.makeCompressed();
    sys.diag_pos.assign(m, -1);
    for (int col = 0; col < m; ++col) {
        for (int p = sys.A.outerIndexPtr()[col]; p < sys.A.outerIndexPtr()[col + 1]; ++p) {
            if (sys.A.innerIndexPtr()[p] == col) sys.diag_pos[col] = p;
        }
    }
    return sys;
}

namespace {

// Residual over the unknowns; also returns the max-norm in u units.
double residual_into(const SteppingSystem& sys, const Eigen::VectorXd& x, std::span<const double> u_prev,
                     std::span<const double> psi_next, const Eigen::VectorXd& dirichlet_term,
                     const PenaltyParams& penalty, Eigen::VectorXd& F, Eigen::VectorXd* jac_diag) {
    F = sys.A * x + dirichlet_term;
    double r = 0.0;
    for (int s = 0; s < static_cast<int>(x.size()); ++s) {
        const int node = sys.node_of[s];
        F[s] -= sys.mass[s] * u_prev[node];
        if (sys.pen[s] != 0.0) {
            const BetaPair b = beta_and_prime(penalty, x[s] - psi_next[node]);
            F[s] += sys.pen[s] * b.beta;
            if (jac_diag) (*jac_diag)[s] = sys.pen[s] * b.beta_prime;
        } else if (jac_diag) {
            (*jac_diag)[s] = 0.0;
        }
        r = std::max(r, std::abs(F[s]) / sys.row_weight[s]);
    }
    return r;
}

Eigen::VectorXd dirichlet_vector(const SteppingSystem& sys, std::span<const double> lateral) {
    Eigen::VectorXd d = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(sys.node_of.size()));
    for (std::size_t s = 0; s < sys.dirichlet.size(); ++s) {
        for (const auto& [node, coef] : sys.dirichlet[s]) d[static_cast<Eigen::Index>(s)] += coef * lateral[node];
    }
    return d;
}

}  // namespace

double step_residual(const SteppingSystem& sys, std::span<const double> u, std::span<const double> u_prev,
                     std::span<const double> psi_next, const PenaltyParams& penalty) {
    const int m = static_cast<int>(sys.node_of.size());
    Eigen::VectorXd x(m);
    for (int s = 0; s < m; ++s) x[s] = u[sys.node_of[s]];
    Eigen::VectorXd F;
    return residual_into(sys, x, u_prev, psi_next, dirichlet_vector(sys, u), penalty, F, nullptr);
}

StepOutcome newton_step(const SteppingSystem& sys, std::span<const double> u_prev, std::span<const double> psi_next,
                        std::span<const double> lateral_next, const PenaltyParams& penalty,
                        const NewtonOptions& opts) {
    const int m = static_cast<int>(sys.node_of.size());
    const Eigen::VectorXd dterm = dirichlet_vector(sys, lateral_next);
    Eigen::VectorXd x(m);
    for (int s = 0; s < m; ++s) x[s] = u_prev[sys.node_of[s]];

    Eigen::VectorXd F(m), jd(m), Ftrial(m), xtrial(m);
    double r = residual_into(sys, x, u_prev, psi_next, dterm, penalty, F, &jd);

    Eigen::SparseMatrix<double> J = sys.A;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
    ldlt.analyzePattern(J);

    double ulim = 0.0;
    for (int node = 0; node < sys.grid.nodes(); ++node) {
        if (sys.slot_of[node] < 0) ulim = std::max(ulim, std::abs(lateral_next[node]));
    }

    int it = 0;
    for (;;) {
        const double unorm = std::max(ulim, m > 0 ? x.cwiseAbs().maxCoeff() : 0.0);
        if (r <= opts.rel_tol * (1.0 + unorm)) break;
        if (it >= opts.max_iters) {
            throw SolverError(ErrorKind::NewtonDiverged,
                              "Newton did not converge in " + std::to_string(opts.max_iters) + " iterations", r);
        }
        ++it;

        for (int s = 0; s < m; ++s) J.valuePtr()[sys.diag_pos[s]] = sys.A.valuePtr()[sys.diag_pos[s]] + jd[s];
        ldlt.factorize(J);
        if (ldlt.info() != Eigen::Success) {
            throw SolverError(ErrorKind::NewtonDiverged, "Jacobian factorization failed", r);
        }
        const Eigen::VectorXd dx = ldlt.solve(-F);

        double step = 1.0;
        double rt = 0.0;
        for (int halving = 0;; ++halving) {
            xtrial = x + step * dx;
            rt = residual_into(sys, xtrial, u_prev, psi_next, dterm, penalty, Ftrial, nullptr);
            if (rt < r || halving >= opts.max_halvings) break;
            step *= 0.5;
        }
        x = xtrial;
        r = residual_into(sys, x, u_prev, psi_next, dterm, penalty, F, &jd);
    }

    StepOutcome out;
    out.u.assign(lateral_next.begin(), lateral_next.end());
    for (int s = 0; s < m; ++s) out.u[sys.node_of[s]] = x[s];
    out.newton_iters = it;
    out.residual = r;
    return out;
}

}  // namespace parobs
