#include "parobs/diagnostics/eigenvalue.hpp"

#include "parobs/core/error.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <array>
#include <cmath>
#include <vector>

namespace parobs {

EigenEstimate estimate_halfspace_eigenvalue(double R, int n, SlitConstraint constraint, int max_iters) {
    if (!(R >= 5.0)) throw Error(ErrorKind::SpecInvalid, "truncation R must be >= 5");
    if (n < 64 || n % 2 != 0) throw Error(ErrorKind::SpecInvalid, "resolution n must be even and >= 64");

    const double h = 2.0 * R / n;
    const int nx = n + 1;
    const int ny = n / 2 + 1;
    auto id = [nx](int i, int j) { return j * nx + i; };

    // 3-point Gauss-Legendre on [0,1]
    const std::array<double, 3> gp{0.5 - 0.5 * std::sqrt(0.6), 0.5, 0.5 + 0.5 * std::sqrt(0.6)};
    const std::array<double, 3> gw{5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};

    std::vector<Eigen::Triplet<double>> kt, mt;
    kt.reserve(static_cast<std::size_t>(n) * n * 8);
    mt.reserve(static_cast<std::size_t>(n) * n * 8);
    for (int j = 0; j + 1 < ny; ++j) {
        for (int i = 0; i + 1 < nx; ++i) {
            double Ke[4][4] = {}, Me[4][4] = {};
            for (int qa = 0; qa < 3; ++qa) {
                for (int qb = 0; qb < 3; ++qb) {
                    const double a = gp[qa], b = gp[qb];
                    const double X = -R + (i + a) * h, Y = (j + b) * h;
                    const double rho = std::exp(-(X * X + Y * Y) / 4.0) * gw[qa] * gw[qb] * h * h;
                    const double N[4] = {(1 - a) * (1 - b), a * (1 - b), (1 - a) * b, a * b};
                    const double dNx[4] = {-(1 - b) / h, (1 - b) / h, -b / h, b / h};
                    const double dNy[4] = {-(1 - a) / h, -a / h, (1 - a) / h, a / h};
                    for (int p = 0; p < 4; ++p) {
                        for (int q = 0; q < 4; ++q) {
                            Ke[p][q] += rho * (dNx[p] * dNx[q] + dNy[p] * dNy[q]);
                            Me[p][q] += rho * N[p] * N[q];
                        }
                    }
                }
            }
            const int ids[4] = {id(i, j), id(i + 1, j), id(i, j + 1), id(i + 1, j + 1)};
            for (int p = 0; p < 4; ++p) {
                for (int q = 0; q < 4; ++q) {
                    kt.emplace_back(ids[p], ids[q], Ke[p][q]);
                    mt.emplace_back(ids[p], ids[q], Me[p][q]);
                }
            }
        }
    }

    // Constrained nodes are removed from the unknown set.
    std::vector<int> slot(static_cast<std::size_t>(nx) * ny, -1);
    int m = 0;
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const double x = -R + i * h;
            bool fixed = false;
            if (j == 0 && constraint == SlitConstraint::FullLine) fixed = true;
            if (j == 0 && constraint == SlitConstraint::HalfLine && x <= 1e-12 * R) fixed = true;
            if (!fixed) slot[id(i, j)] = m++;
        }
    }
    auto restrict = [&](const std::vector<Eigen::Triplet<double>>& in) {
        std::vector<Eigen::Triplet<double>> out;
        out.reserve(in.size());
        for (const auto& t : in) {
            const int r = slot[t.row()], c = slot[t.col()];
            if (r >= 0 && c >= 0) out.emplace_back(r, c, t.value());
        }
        Eigen::SparseMatrix<double> A(m, m);
        A.setFromTriplets(out.begin(), out.end());
        return A;
    };
    const Eigen::SparseMatrix<double> K = restrict(kt);
    const Eigen::SparseMatrix<double> M = restrict(mt);

    // A negative shift keeps K - sigma M positive definite even when constants
    // are admissible (lambda = 0).
    const double sigma = -0.01;
    Eigen::SparseMatrix<double> S = K - sigma * M;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(S);
    if (ldlt.info() != Eigen::Success) throw Error(ErrorKind::IterationStalled, "shifted operator factorization failed");

    Eigen::VectorXd x(m);
    for (int j = 0, q = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            if (slot[id(i, j)] >= 0) x[q++] = 1.0 + 0.1 * (-R + i * h) / R;
        }
    }
    x /= std::sqrt(x.dot(M * x));

    EigenEstimate est;
    double prev = INFINITY;
    for (int it = 1; it <= max_iters; ++it) {
        Eigen::VectorXd y = ldlt.solve(M * x);
        y /= std::sqrt(y.dot(M * y));
        x = y;
        const Eigen::VectorXd Kx = K * x, Mx = M * x;
        const double lambda = x.dot(Kx);
        est.lambda = lambda;
        est.iterations = it;
        est.residual = (Kx - lambda * Mx).cwiseAbs().maxCoeff() / Mx.cwiseAbs().maxCoeff();
        if (std::abs(lambda - prev) <= 1e-13 * std::max(1.0, std::abs(lambda)) && est.residual < 1e-8) return est;
        prev = lambda;
    }
    throw Error(ErrorKind::IterationStalled, "inverse iteration did not settle in " + std::to_string(max_iters) + " steps");
}

}  // namespace parobs
