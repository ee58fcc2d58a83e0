#include "doctest.h"
#include "support.hpp"

#include "parobs/core/error.hpp"
#include "parobs/core/stencil.hpp"
#include "parobs/oracle/closed_form.hpp"
#include "parobs/oracle/psor.hpp"
#include "parobs/oracle/reference.hpp"
#include "parobs/solvers/builtins.hpp"
#include "parobs/solvers/march.hpp"

#include <cmath>
#include <random>

using namespace parobs;
using namespace parobs::testing;

namespace {

// Tridiagonal (-1, 2 + c, -1) on n unknowns.
LcpStepProblem tridiagonal_lcp(int n, double c, double obstacle) {
    LcpStepProblem p;
    for (int i = 0; i < n; ++i) {
        if (i > 0) p.op.push(i - 1, -1.0);
        p.op.push(i, 2.0 + c);
        if (i + 1 < n) p.op.push(i + 1, -1.0);
        p.op.end_row();
        p.rhs.push_back(std::sin(0.3 * i) + 0.1 * i);
    }
    p.obstacle.assign(n, obstacle);
    p.constrained.assign(n, 1);
    return p;
}

std::vector<double> thomas(int n, double c, const std::vector<double>& rhs) {
    std::vector<double> cp(n), dp(n), x(n);
    const double b = 2.0 + c;
    cp[0] = -1.0 / b;
    dp[0] = rhs[0] / b;
    for (int i = 1; i < n; ++i) {
        const double m = b + cp[i - 1];
        cp[i] = -1.0 / m;
        dp[i] = (rhs[i] + dp[i - 1]) / m;
    }
    x[n - 1] = dp[n - 1];
    for (int i = n - 2; i >= 0; --i) x[i] = dp[i] - cp[i] * x[i + 1];
    return x;
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("PSOR with a far obstacle solves the linear system") {
    const int n = 40;
    const LcpStepProblem p = tridiagonal_lcp(n, 0.5, -1e9);
    PsorOptions o;
    o.tol = 1e-13;
    const PsorResult r = psor_solve(p, o);
    const auto x = thomas(n, 0.5, p.rhs);
    CHECK(max_abs_diff(r.z, x) <= 1e-11);
    CHECK(r.defect <= 1e-13);
}

TEST_CASE("PSOR on a single node") {
    for (auto [a, b, c] : {std::array{2.0, 3.0, 0.0}, std::array{2.0, 3.0, 4.0}, std::array{0.5, -1.0, -3.0}}) {
        LcpStepProblem p;
        p.op.push(0, a);
        p.op.end_row();
        p.rhs = {b};
        p.obstacle = {c};
        p.constrained = {1};
        PsorOptions o;
        o.tol = 1e-13;
        CHECK(psor_solve(p, o).z[0] == doctest::Approx(std::max(b / a, c)).epsilon(1e-12));
    }
}

TEST_CASE("PSOR on two nodes agrees with active-set enumeration") {
    // A = [[2, -1], [-1, 2]], rhs = (1, -2), obstacle (0, 0).
    const double A[2][2] = {{2, -1}, {-1, 2}};
    const double rhs[2] = {1, -2}, lo[2] = {0, 0};
    LcpStepProblem p;
    for (int i = 0; i < 2; ++i) {
        p.op.push(0, A[i][0]);
        p.op.push(1, A[i][1]);
        p.op.end_row();
    }
    p.rhs = {rhs[0], rhs[1]};
    p.obstacle = {lo[0], lo[1]};
    p.constrained = {1, 1};

    // Enumerate: each node either sits on its obstacle or has zero residual.
    std::vector<std::array<double, 2>> solutions;
    for (int mask = 0; mask < 4; ++mask) {
        std::array<double, 2> z{};
        const bool on0 = mask & 1, on1 = mask & 2;
        if (on0 && on1) {
            z = {lo[0], lo[1]};
        } else if (on0) {
            z = {lo[0], (rhs[1] - A[1][0] * lo[0]) / A[1][1]};
        } else if (on1) {
            z = {(rhs[0] - A[0][1] * lo[1]) / A[0][0], lo[1]};
        } else {
            const double det = A[0][0] * A[1][1] - A[0][1] * A[1][0];
            z = {(rhs[0] * A[1][1] - A[0][1] * rhs[1]) / det, (A[0][0] * rhs[1] - A[1][0] * rhs[0]) / det};
        }
        bool ok = true;
        for (int i = 0; i < 2; ++i) {
            const double r = A[i][0] * z[0] + A[i][1] * z[1] - rhs[i];
            ok = ok && z[i] >= lo[i] - 1e-14 && r >= -1e-14 && std::abs((z[i] - lo[i]) * r) <= 1e-14;
        }
        if (ok) solutions.push_back(z);
    }
    REQUIRE(solutions.size() == 1u);
    const PsorResult r = psor_solve(p);
    CHECK(r.z[0] == doctest::Approx(solutions[0][0]).epsilon(1e-9));
    CHECK(r.z[1] == doctest::Approx(solutions[0][1]).epsilon(1e-9));
    CHECK(r.z[0] == doctest::Approx(0.5));
    CHECK(r.z[1] == 0.0);
}

TEST_CASE("PSOR sweep direction does not change the answer") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    const int n = 30;
    LcpStepProblem p = tridiagonal_lcp(n, 0.2, 0.0);
    for (auto& v : p.rhs) v = U(rng);
    for (auto& v : p.obstacle) v = 0.3 * U(rng);
    for (int i = 0; i < n; i += 3) p.constrained[i] = 0;
    PsorOptions fwd;
    fwd.tol = 1e-12;
    PsorOptions rev = fwd;
    rev.reverse = true;
    const PsorResult a = psor_solve(p, fwd), b = psor_solve(p, rev);
    CHECK(max_abs_diff(a.z, b.z) <= 1e-10);
    CHECK(lcp_defect(p, a.z) <= 1e-12);
    CHECK(lcp_complementarity(p, a.z) <= 1e-10);
    for (int i = 0; i < n; ++i) {
        if (p.constrained[i]) CHECK(a.z[i] >= p.obstacle[i] - 1e-12);
    }
}

TEST_CASE("PSOR reports non-convergence with its defect") {
    const LcpStepProblem p = tridiagonal_lcp(200, 0.0, -1e9);
    PsorOptions o;
    o.max_iters = 3;
    try {
        psor_solve(p, o);
        FAIL("three sweeps should not converge");
    } catch (const SolverError& e) {
        CHECK(e.kind() == ErrorKind::NotConverged);
        CHECK(e.last_residual() > o.tol);
    }
}

TEST_CASE("reference solve of unconstrained data matches the linear scheme") {
    const Builtin b = make_builtin("unconstrained-heat");
    const SolveResult ref = solve_reference(b.spec, b.grid);
    const SolveResult pen = march(b.spec, b.grid);
    CHECK(max_abs_diff(ref.u.values, pen.u.values) <= 1e-9);
}

TEST_CASE("reference solve of the active thick obstacle is within 3 eps of the penalized run") {
    const Builtin b = make_builtin("thick-active");
    const SolveResult ref = solve_reference(b.spec, b.grid);
    const SolveResult pen = march(b.spec, b.grid);
    CHECK(max_abs_diff(ref.u.values, pen.u.values) <= 3.0 * b.spec.eps.eps);
    for (std::size_t q = 0; q < ref.u.values.size(); ++q) CHECK(ref.u.values[q] >= b.spec.data.psi.values[q] - 1e-12);
    for (const StepRecord& r : ref.per_step) CHECK(r.complementarity_defect <= 1e-9);
}

TEST_CASE("reference Signorini coincidence set is the left half of the face") {
    const Builtin b = make_builtin("signorini-stationary", {.n_space = 33, .n_time = 65});
    const SolveResult ref = solve_reference(b.spec, b.grid);
    const Grid& g = b.grid;
    const int K = g.n_time - 1;
    for (int i = 1; i + 1 < g.n_space; ++i) {
        const int q = g.index(i, 0);
        const bool touching = ref.u.at(K, q) <= 1e-9;
        if (g.x1(q) <= -g.h) CHECK(touching);
        if (g.x1(q) >= g.h) CHECK_FALSE(touching);
    }
}

TEST_CASE("reference unknowns skip Dirichlet nodes") {
    const Builtin b = make_builtin("signorini-stationary", {.n_space = 9, .n_time = 5});
    const auto u = oracle_unknowns(b.grid);
    CHECK(u.size() == static_cast<std::size_t>(7 * 8));
    for (int n : u) CHECK_FALSE(b.grid.is_dirichlet(n));
}

TEST_CASE("Signorini profile values") {
    for (double omega : {0.0, 0.3, -1.2}) CHECK(signorini_profile(1.0, 0.0, 0.0, omega) == doctest::Approx(2.0 / 3.0));
    CHECK(signorini_profile(-1.0, 0.0, 0.0) == 0.0);
    CHECK(signorini_profile(-0.5, 0.0, 1.0, 0.3) == 0.0);
    CHECK(signorini_profile(0.1, 0.0, 1.0, 0.3) > 0.0);
    // Even in x2 and traveling: u(x1, x2, t) = u(x1 + omega t, x2, 0).
    CHECK(signorini_profile(0.3, -0.4, 0.0) == signorini_profile(0.3, 0.4, 0.0));
    CHECK(signorini_profile(0.2, 0.1, 0.5, 0.3) == doctest::Approx(signorini_profile(0.35, 0.1, 0.0)).epsilon(1e-14));
}

TEST_CASE("Signorini profile is harmonic away from the slit") {
    const double h = 1e-3, x = 0.5, y = 0.5;
    auto u = [](double a, double b) { return signorini_profile(a, b, 0.0); };
    const double lap = (u(x + h, y) + u(x - h, y) + u(x, y + h) + u(x, y - h) - 4 * u(x, y)) / (h * h);
    CHECK(std::abs(lap) <= 1e-4);
}

TEST_CASE("Signorini profile gradient matches differences") {
    for (auto [x1, x2, t, w, rot] : {std::array{0.4, 0.3, 0.0, 0.0, 0.0}, std::array{-0.2, 0.5, 0.1, 0.3, 0.1}}) {
        const auto g = signorini_profile_gradient(x1, x2, t, w, rot);
        const double d = 1e-6;
        const double g1 = (signorini_profile(x1 + d, x2, t, w, rot) - signorini_profile(x1 - d, x2, t, w, rot)) / (2 * d);
        const double g2 = (signorini_profile(x1, x2 + d, t, w, rot) - signorini_profile(x1, x2 - d, t, w, rot)) / (2 * d);
        CHECK(g[0] == doctest::Approx(g1).epsilon(1e-6));
        CHECK(g[1] == doctest::Approx(g2).epsilon(1e-6));
    }
}

TEST_CASE("heat series") {
    const std::array<SeriesMode, 1> one{SeriesMode{1.0, 1.0}};
    for (double x : {0.1, 0.5, 0.77}) CHECK(heat_series_solution(one, x, 0.0) == doctest::Approx(std::sin(kPi * x)));
    CHECK(std::abs(heat_series_solution(one, 0.3, 100.0)) < 1e-300);

    const std::array<SeriesMode, 2> two{SeriesMode{1.0, 0.7}, SeriesMode{3.0, -0.2}};
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int i = 0; i < 10; ++i) {
        const double x = U(rng), t = 0.1 * U(rng);
        const double direct = 0.7 * std::exp(-kPi * kPi * t) * std::sin(kPi * x) -
                              0.2 * std::exp(-9 * kPi * kPi * t) * std::sin(3 * kPi * x);
        CHECK(std::abs(heat_series_solution(two, x, t) - direct) <= 1e-15);
        const double cosine = 0.7 * std::exp(-kPi * kPi * t) * std::cos(kPi * x) -
                              0.2 * std::exp(-9 * kPi * kPi * t) * std::cos(3 * kPi * x);
        CHECK(std::abs(heat_series_solution(two, x, t, SeriesKind::Cosine) - cosine) <= 1e-15);
        const double periodic = 0.7 * std::exp(-t) * std::cos(x) - 0.2 * std::exp(-9 * t) * std::cos(3 * x);
        CHECK(std::abs(heat_series_solution(two, x, t, SeriesKind::Periodic) - periodic) <= 1e-15);
    }
}

}  // TEST_SUITE
