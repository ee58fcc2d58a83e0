#include "doctest.h"
#include "support.hpp"

#include "parobs/core/error.hpp"
#include "parobs/diagnostics/free_boundary.hpp"
#include "parobs/oracle/closed_form.hpp"
#include "parobs/oracle/reference.hpp"
#include "parobs/penalty/penalty.hpp"
#include "parobs/solvers/builtins.hpp"
#include "parobs/solvers/fractional.hpp"
#include "parobs/solvers/march.hpp"
#include "parobs/solvers/steppers.hpp"
#include "parobs/solvers/sweep.hpp"

#include <Eigen/Dense>

#include <cmath>

using namespace parobs;
using namespace parobs::testing;

namespace {

// Backward Euler for the heat equation on a half box with the face condition
// d u / d x2 = alpha d u / d t, written with a ghost row and solved densely.
std::vector<double> dense_face_step(const Grid& g, const std::vector<double>& u_prev,
                                    std::span<const double> lateral, double alpha) {
    std::vector<int> slot(g.nodes(), -1), node_of;
    for (int n = 0; n < g.nodes(); ++n) {
        if (!g.is_dirichlet(n)) {
            slot[n] = static_cast<int>(node_of.size());
            node_of.push_back(n);
        }
    }
    const int m = static_cast<int>(node_of.size());
    const double lam = g.dt / (g.h * g.h);
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, m);
    Eigen::VectorXd b(m);
    for (int s = 0; s < m; ++s) {
        const int n = node_of[s];
        const int i = g.i_of(n), j = g.j_of(n);
        const double mass = j == 0 ? 1.0 + 2.0 * alpha / g.h : 1.0;
        A(s, s) = mass + 4.0 * lam;
        b[s] = mass * u_prev[n];
        auto add = [&](int nb, double w) {
            if (slot[nb] >= 0) {
                A(s, slot[nb]) -= w * lam;
            } else {
                b[s] += w * lam * lateral[nb];
            }
        };
        add(g.index(i - 1, j), 1.0);
        add(g.index(i + 1, j), 1.0);
        if (j == 0) {
            add(g.index(i, 1), 2.0);
        } else {
            add(g.index(i, j - 1), 1.0);
            add(g.index(i, j + 1), 1.0);
        }
    }
    const Eigen::VectorXd x = A.partialPivLu().solve(b);
    std::vector<double> u(lateral.begin(), lateral.end());
    for (int s = 0; s < m; ++s) u[node_of[s]] = x[s];
    return u;
}

ProblemSpec face_spec(const Grid& g, Prototype proto, std::optional<double> alpha) {
    DataFns fns;
    fns.psi = [](double, double, double) { return -10.0; };
    fns.phi = [](double x1, double x2) { return std::cos(kPi * x1 / 2) * (1.0 - 0.5 * x2) + 0.3 * x1 * x2; };
    fns.lateral = [](double x1, double x2, double t) { return 0.3 * x1 * x2 * (1.0 + t); };
    return ProblemSpec{"face", proto, make_data(g, fns), alpha, {}, {1e-2, 1.0}, g.t_end() - g.t0};
}

double dense_face_error(Prototype proto, std::optional<double> alpha) {
    const Grid g = grid2(Geometry::HalfBoxWithGamma, 17, 9, {-1, 1}, {0, 2}, 0.2);
    const ProblemSpec spec = face_spec(g, proto, alpha);
    const SolveResult res = march(spec, g);
    std::vector<double> u = spec.data.phi0;
    double err = 0.0;
    for (int k = 1; k < g.n_time; ++k) {
        u = dense_face_step(g, u, spec.data.lateral.slice(k), alpha.value_or(0.0));
        err = std::max(err, max_abs_diff(u, res.u.slice(k)));
    }
    return err;
}

}  // namespace

TEST_SUITE("solvers") {

TEST_CASE("inactive thick obstacle reproduces the heat solution") {
    const Builtin b = make_builtin("unconstrained-heat");
    const SolveResult res = march(b.spec, b.grid);
    double err = 0.0;
    for (int k = 0; k < b.grid.n_time; ++k) {
        for (int n = 0; n < b.grid.nodes(); ++n) {
            const double exact = std::exp(-kPi * kPi * b.grid.time(k)) * std::sin(kPi * b.grid.x1(n));
            err = std::max(err, std::abs(res.u.at(k, n) - exact));
        }
    }
    CHECK(err <= 5.0 * (b.grid.h * b.grid.h + b.grid.dt));
    for (const StepRecord& r : res.per_step) CHECK(r.complementarity_defect == 0.0);
}

TEST_CASE("zero data settles on the one-node penalty equilibrium") {
    // One interior node at h = 1/2: the steady state solves 8 u = -beta(u).
    const Grid g = grid1(Geometry::Box, 3, 201, 0.0, 1.0, 5.0);
    const ProblemSpec spec{"zero", Prototype::Thick, make_data(g, {}), {}, {}, {1e-2, 1.0}, 5.0};
    const SolveResult res = march(spec, g);

    double lo = 0.0, hi = spec.eps.eps;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (8.0 * mid + beta_and_prime(spec.eps, mid).beta > 0.0 ? hi : lo) = mid;
    }
    const double u_mid = res.u.at(g.n_time - 1, 1);
    CHECK(u_mid == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-10));
    for (double v : res.u.values) {
        CHECK(v >= 0.0);
        CHECK(v <= spec.eps.eps);
    }
}

TEST_CASE("active thick obstacle: contact set appears and the gap stays above -eps") {
    const Builtin b = make_builtin("thick-active");
    const SolveResult res = march(b.spec, b.grid);
    const double eps = b.spec.eps.eps;
    for (std::size_t q = 0; q < res.u.values.size(); ++q) CHECK(res.u.values[q] >= b.spec.data.psi.values[q] - eps);

    const int k = level_of(b.grid, 0.05);
    const auto snaps = extract_free_boundary(res, b.spec.data, eps);
    int masked = 0;
    for (auto m : snaps[k].coincidence_mask) masked += m;
    CHECK(masked > 0);
}

TEST_CASE("a never-activated obstacle leaves the scheme bit-identical") {
    const Builtin b = make_builtin("unconstrained-heat");
    ProblemSpec lower = b.spec;
    for (double& v : lower.data.psi.values) v -= 1000.0;
    const SolveResult r1 = march(b.spec, b.grid);
    const SolveResult r2 = march(lower, b.grid);
    CHECK(r1.u.values == r2.u.values);
}

TEST_CASE("far Signorini obstacle reproduces the zero-flux heat problem") {
    CHECK(dense_face_error(Prototype::Signorini, std::nullopt) <= 1e-9);
}

TEST_CASE("far dynamic obstacle reproduces the dynamic face condition") {
    CHECK(dense_face_error(Prototype::DynamicThin, 0.5) <= 1e-9);
}

TEST_CASE("stationary Signorini march approaches the profile") {
    double prev = 1e300;
    for (int n : {33, 65}) {
        BuiltinOptions o;
        o.n_space = n;
        o.n_time = 2 * n - 1;
        o.eps = 1e-5;
        const Builtin b = make_builtin("signorini-stationary", o);
        const SolveResult res = march(b.spec, b.grid);
        const Grid& g = b.grid;
        const int K = g.n_time - 1;
        double err = 0.0;
        for (int q = 0; q < g.nodes(); ++q) {
            err = std::max(err, std::abs(res.u.at(K, q) - signorini_profile(g.x1(q), g.x2(q), 0.0)));
        }
        CAPTURE(n);
        CAPTURE(err);
        CHECK(err <= g.h);
        CHECK(err < prev);
        prev = err;

        // Coincidence on the face is {x1 <= 0} to within one cell.
        for (int i = 1; i + 1 < n; ++i) {
            const int q = g.index(i, 0);
            const bool touching = res.u.at(K, q) <= b.spec.eps.eps;
            if (g.x1(q) <= -g.h) CHECK(touching);
            if (g.x1(q) >= g.h) CHECK_FALSE(touching);
        }
    }
}

TEST_CASE("Signorini complementarity defect shrinks with eps") {
    double prev = 1e300;
    for (double eps : {1e-2, 1e-3}) {
        BuiltinOptions o;
        o.n_space = 33;
        o.n_time = 65;
        o.eps = eps;
        // At scale 2 the face flux (up to 1 at the corners) pulls u below psi somewhere.
        o.scale = 2.0;
        const Builtin b = make_builtin("signorini-stationary", o);
        const SolveResult res = march(b.spec, b.grid);
        // The discrete flux through the face is beta itself, so -d u / d x2 = -beta >= 0.
        double worst = 0.0;
        for (int k = 1; k < b.grid.n_time; ++k) {
            for (int q : contact_nodes(b.grid)) {
                if (!b.grid.is_gamma(q)) continue;
                const double gap = res.u.at(k, q) - b.spec.data.psi.at(k, q);
                const double flux = -beta_and_prime(b.spec.eps, gap).beta;
                CHECK(flux >= 0.0);
                worst = std::max(worst, -std::min(std::min(gap, flux), 0.0));
            }
        }
        CAPTURE(eps);
        CHECK(worst > 0.0);
        CHECK(worst <= 3.0 * eps);
        // A decade in eps buys close to a decade in the defect.
        CHECK(worst <= 0.2 * prev);
        prev = worst;
    }
}

TEST_CASE("dynamic step approaches the Signorini step as alpha vanishes") {
    BuiltinOptions o;
    o.alpha = 1e-6;
    const Builtin dyn = make_builtin("dynamic-caloric", o);
    // Raise the obstacle so it is touched on the face from the start.
    ProblemSpec dyn_spec = dyn.spec;
    for (double& v : dyn_spec.data.psi.values) v += 0.06;
    ProblemSpec sig = dyn_spec;
    sig.prototype = Prototype::Signorini;
    sig.alpha.reset();
    const SolveResult a = march(dyn_spec, dyn.grid);
    const SolveResult b = march(sig, dyn.grid);
    double min_gap = 1e300;
    for (const auto& r : b.per_step) min_gap = std::min(min_gap, r.min_gap);
    CHECK(min_gap < sig.eps.eps);  // the obstacle is actually touched
    CHECK(max_abs_diff(a.u.values, b.u.values) <= 1e-4);
}

TEST_CASE("constant data stays constant under the dynamic condition") {
    const Grid g = grid2(Geometry::HalfBoxWithGamma, 17, 9, {-1, 1}, {0, 2}, 0.2);
    DataFns fns;
    fns.phi = [](double, double) { return 0.7; };
    fns.lateral = [](double, double, double) { return 0.7; };
    const ProblemSpec spec{"const", Prototype::DynamicThin, make_data(g, fns), 0.5, {}, {1e-2, 1.0}, 0.2};
    const SolveResult res = march(spec, g);
    for (double v : res.u.values) CHECK(v == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("fractional operator multiplies Fourier modes") {
    const Grid g = grid1(Geometry::PeriodicLine, 64, 3, 0.0, 2 * kPi, 1.0);
    std::vector<double> c(g.nodes());
    for (int n = 0; n < g.nodes(); ++n) c[n] = std::cos(2.0 * g.x1(n));
    const auto out = apply_fractional_laplacian(c, g, 0.5);
    for (int n = 0; n < g.nodes(); ++n) CHECK(out[n] == doctest::Approx(2.0 * c[n]).epsilon(1e-12).scale(1.0));
    const auto mult = fractional_multiplier(g, 0.75);
    CHECK(mult.size() == 33u);
    CHECK(mult[0] == 0.0);
    CHECK(mult[5] == doctest::Approx(std::pow(5.0, 1.5)));
}

TEST_CASE("fractional step at s = 1 decays each mode exactly") {
    const Grid g = grid1(Geometry::PeriodicLine, 64, 11, 0.0, 2 * kPi, 0.1);
    for (int k : {1, 3, 7, 20}) {
        DataFns fns;
        fns.psi = [](double, double, double) { return -100.0; };
        fns.phi = [k](double x, double) { return std::cos(k * x); };
        ProblemSpec spec{"mode", Prototype::Fractional, make_data(g, fns), {}, 1.0, {1e-3, 1.0}, 0.1};
        const auto u1 = step_fractional(spec.data.phi0, spec, g, g.time(1));
        const double factor = 1.0 / (1.0 + g.dt * k * k);
        for (int n = 0; n < g.nodes(); ++n) CHECK(std::abs(u1[n] - factor * spec.data.phi0[n]) <= 1e-12);
    }
}

TEST_CASE("fractional obstacle run agrees with the projected reference") {
    const Builtin b = make_builtin("fractional-active");
    const SolveResult pen = march(b.spec, b.grid);
    const SolveResult ref = solve_reference(b.spec, b.grid);
    const double eps = b.spec.eps.eps;
    CHECK(max_abs_diff(pen.u.values, ref.u.values) <= 3.0 * eps);
    for (std::size_t q = 0; q < pen.u.values.size(); ++q) CHECK(pen.u.values[q] >= b.spec.data.psi.values[q] - eps);
    const auto snaps = extract_free_boundary(pen, b.spec.data, eps);
    int masked = 0;
    for (auto m : snaps.back().coincidence_mask) masked += m;
    CHECK(masked > 0);
}

TEST_CASE("one-shot steppers reject mismatched inputs") {
    const Builtin b = make_builtin("unconstrained-heat");
    const auto& phi = b.spec.data.phi0;
    CHECK_NOTHROW(step_thick(phi, b.spec, b.grid, b.grid.time(1)));
    auto kind = [](auto&& f) {
        try {
            f();
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::Io;
    };
    CHECK(kind([&] { step_thick(phi, b.spec, b.grid, 0.5 * b.grid.dt); }) == ErrorKind::SpecInvalid);
    CHECK(kind([&] { step_signorini(phi, b.spec, b.grid, b.grid.time(1)); }) == ErrorKind::SpecInvalid);
    const std::vector<double> short_slice(3, 0.0);
    CHECK(kind([&] { step_thick(short_slice, b.spec, b.grid, b.grid.time(1)); }) == ErrorKind::ShapeMismatch);

    const Builtin sig = make_builtin("signorini-stationary", {.n_space = 9, .n_time = 5});
    CHECK(kind([&] { validate_spec(b.spec, sig.grid); }) == ErrorKind::GeometryMismatch);
    ProblemSpec with_alpha = b.spec;
    with_alpha.alpha = 1.0;
    CHECK(kind([&] { validate_spec(with_alpha, b.grid); }) == ErrorKind::SpecInvalid);
    ProblemSpec bad_eps = b.spec;
    bad_eps.eps.eps = 0.0;
    CHECK(kind([&] { validate_spec(bad_eps, b.grid); }) == ErrorKind::SpecInvalid);
    ProblemSpec bad_shape = b.spec;
    bad_shape.data.psi = sig.spec.data.psi;
    CHECK(kind([&] { validate_spec(bad_shape, b.grid); }) == ErrorKind::ShapeMismatch);
    ProblemSpec frac = make_builtin("fractional-active", {.n_space = 16, .n_time = 3}).spec;
    frac.s.reset();
    CHECK(kind([&] { validate_spec(frac, make_builtin("fractional-active", {.n_space = 16, .n_time = 3}).grid); }) ==
          ErrorKind::SpecInvalid);
}

TEST_CASE("eps sweep of unconstrained data matches the linear scheme") {
    const Builtin b = make_builtin("unconstrained-heat", {.n_space = 51, .n_time = 51});
    const SweepTable t = eps_sweep(b.spec, b.grid, {1e-1, 1e-2, 1e-3});
    REQUIRE(t.rows.size() == 3u);
    for (const SweepRow& r : t.rows) {
        REQUIRE(r.error_vs_reference.has_value());
        CHECK(*r.error_vs_reference <= 1e-9);
    }
}

TEST_CASE("eps sweep of the active thick obstacle converges") {
    const Builtin b = make_builtin("thick-active", {.n_space = 65, .n_time = 33});
    const std::vector<double> eps{1e-1, 1e-2, 1e-3};
    const SweepTable one = eps_sweep(b.spec, b.grid, eps, 1);
    const SweepTable two = eps_sweep(b.spec, b.grid, eps, 2);
    for (std::size_t i = 0; i < eps.size(); ++i) {
        CHECK(one.rows[i].eps == eps[i]);
        CHECK(one.rows[i].min_gap >= -eps[i]);
        CHECK(one.rows[i].error_vs_reference == two.rows[i].error_vs_reference);
        if (i > 0) CHECK(*one.rows[i].error_vs_reference < *one.rows[i - 1].error_vs_reference);
    }
    try {
        eps_sweep(b.spec, b.grid, {1e-2, 1e-1, 1e-3});
        FAIL("accepted a non-decreasing eps list");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SpecInvalid);
    }
}

TEST_CASE("every built-in validates on its default grid") {
    for (const std::string& name : builtin_names()) {
        const Builtin b = make_builtin(name);
        CAPTURE(name);
        CHECK_NOTHROW(validate_spec(b.spec, b.grid));
        CHECK(b.spec.name == name);
    }
    try {
        make_builtin("no-such-problem");
        FAIL("unknown name accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ConfigInvalid);
        CHECK(std::string(e.what()).find("problem.test") != std::string::npos);
    }
}

}  // TEST_SUITE
