#include "doctest.h"
#include "support.hpp"

#include "parobs/core/error.hpp"
#include "parobs/diagnostics/blowup.hpp"
#include "parobs/diagnostics/eigenvalue.hpp"
#include "parobs/diagnostics/fit.hpp"
#include "parobs/diagnostics/free_boundary.hpp"
#include "parobs/diagnostics/gradient.hpp"
#include "parobs/diagnostics/modulus.hpp"
#include "parobs/diagnostics/monotonicity.hpp"
#include "parobs/diagnostics/quasiconvexity.hpp"
#include "parobs/diagnostics/report.hpp"
#include "parobs/oracle/closed_form.hpp"
#include "parobs/solvers/builtins.hpp"
#include "parobs/solvers/march.hpp"

#include <cmath>
#include <sstream>

using namespace parobs;
using namespace parobs::testing;

namespace {

ScalarField profile_field(const Grid& g, double omega) {
    return sample(g, [omega](double x1, double x2, double t) { return signorini_profile(x1, x2, t, omega); }, "u");
}

// [-1,1] x [0,2] half box, time in [t0, t0 + T].
Grid half_box(int n, int nt, double T, double t0) { return grid2(Geometry::HalfBoxWithGamma, n, nt, {-1, 1}, {0, 2}, T, t0); }

template <class F>
ErrorKind kind_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::Io;
}

}  // namespace

TEST_SUITE("diagnostics") {

TEST_CASE("line fits") {
    const std::vector<double> x{1, 2, 3, 4}, y{3, 5, 7, 9};
    const LineFit f = fit_line(x, y);
    CHECK(f.slope == doctest::Approx(2.0));
    CHECK(f.intercept == doctest::Approx(1.0));
    CHECK(f.residual < 1e-12);
    const std::vector<double> r{0.1, 0.2, 0.4, 0.8, 1.6}, p{0.0, 0.2, 0.4, 0.8, 1.6};
    std::vector<double> q;
    for (double v : r) q.push_back(3.0 * std::pow(v, 1.5));
    CHECK(fit_loglog(r, q).slope == doctest::Approx(1.5));
    // Non-positive values are dropped; then only four points remain.
    CHECK(fit_loglog(r, p).points == 4);
    CHECK(kind_of([&] { fit_loglog(r, p, 5); }) == ErrorKind::RadiiUnresolvable);
}

TEST_CASE("heat solution has nonnegative time convexity") {
    const Builtin b = make_builtin("unconstrained-heat");
    const SolveResult res = march(b.spec, b.grid);
    const QuasiconvexityResult q = quasiconvexity_check(res, b.spec.data);
    CHECK(q.utt_min >= -1e-9);
    CHECK(q.utt_bound == doctest::Approx(std::pow(kPi, 4)).epsilon(1e-12));
    CHECK(q.pass_margin > 0.0);
}

TEST_CASE("affine-in-time field has zero time convexity") {
    const Grid g = grid1(Geometry::Box, 11, 9, 0.0, 1.0, 1.0);
    const ScalarField u = sample(g, [](double x, double, double t) { return 0.25 + 0.5 * t + 0.125 * x * t; });
    const QuasiconvexityResult q = quasiconvexity_scan(u);
    CHECK(std::abs(q.utt_min) <= 1e-12);
}

TEST_CASE("smooth thick run is least time-convex on the parabolic boundary") {
    const Builtin b = make_builtin("thick-smooth");
    const SolveResult res = march(b.spec, b.grid);
    const QuasiconvexityResult q = quasiconvexity_check(res, b.spec.data);
    CHECK(q.boundary_min <= q.interior_min);
    CHECK(q.utt_min == q.boundary_min);
    CHECK(q.pass_margin > 0.0);
}

TEST_CASE("quasi-convexity needs derivative data") {
    const Builtin b = make_builtin("unconstrained-heat", {.n_space = 11, .n_time = 11});
    const SolveResult res = march(b.spec, b.grid);
    SampledData d = b.spec.data;
    d.psi_tt = ScalarField{};
    CHECK(kind_of([&] { quasiconvexity_check(res, d); }) == ErrorKind::MissingDerivativeData);
}

TEST_CASE("modulus of a constant field vanishes") {
    const Grid g = grid1(Geometry::Box, 65, 17, 0.0, 1.0, 0.25);
    const ScalarField v = sample(g, [](double, double, double) { return 2.5; });
    const std::vector<double> radii{4 * g.h, 8 * g.h, 16 * g.h};
    const ModulusResult m = time_derivative_modulus(v, radii);
    for (double o : m.oscillation) CHECK(o == 0.0);
    CHECK_FALSE(m.has_fit);
    const std::vector<double> tiny{g.h};
    CHECK(kind_of([&] { time_derivative_modulus(v, tiny); }) == ErrorKind::RadiiUnresolvable);
}

TEST_CASE("modulus recovers a square-root cusp") {
    const Grid g = grid1(Geometry::Box, 513, 3, 0.0, 1.0, 1.0);
    const ScalarField v = sample(g, [](double x, double, double) { return std::sqrt(std::abs(x - 0.5)); });
    std::vector<double> radii;
    for (int m : {4, 8, 16, 32, 64}) radii.push_back(m * g.h);
    const ModulusResult res = time_derivative_modulus(v, radii);
    REQUIRE(res.has_fit);
    CHECK(res.fit.slope == doctest::Approx(0.5).epsilon(0.1));
    for (std::size_t i = 1; i < res.oscillation.size(); ++i) CHECK(res.oscillation[i] > res.oscillation[i - 1]);
}

TEST_CASE("monotonicity functional") {
    // h = 1/40 on [-4.5, 4.5] x [0, 9]; strides 1, 2, 4, 8 for the four radii.
    const Grid g = grid2(Geometry::HalfBoxWithGamma, 361, 3, {-4.5, 4.5}, {0, 9}, 0.25, -0.25);
    const std::vector<double> radii{0.05, 0.1, 0.2, 0.4};
    MonotonicityOptions opts;
    opts.samples_per_radius = 2;
    const SpaceTimePoint origin{0, 0, 0};

    SUBCASE("vanishes on the zero field") {
        const ScalarField zero(g);
        for (const PhiPoint& p : monotonicity_functional(zero, origin, radii, 4.5, opts)) CHECK(p.phi == 0.0);
    }
    SUBCASE("nondecreasing for the normal derivative of the profile") {
        const ScalarField w = sample(g, [](double x1, double x2, double) {
            return signorini_profile_gradient(x1, x2, 0.0)[1];
        });
        const auto phi = monotonicity_functional(w, origin, radii, 4.5, opts);
        for (std::size_t i = 0; i < phi.size(); ++i) {
            CHECK(phi[i].phi > 0.0);
            for (std::size_t j = i + 1; j < phi.size(); ++j) CHECK(phi[j].phi >= phi[i].phi - 1e-3 * phi[i].phi);
        }
    }
    SUBCASE("constant for a half-homogeneous field") {
        const ScalarField w = sample(g, [](double x1, double x2, double) {
            return std::sqrt(std::hypot(x1, x2)) * std::cos(0.5 * std::atan2(x2, x1));
        });
        const auto phi = monotonicity_functional(w, origin, radii, 4.5, opts);
        for (const PhiPoint& p : phi) CHECK(p.phi == doctest::Approx(phi.front().phi).epsilon(0.01));
    }
    SUBCASE("centre must carry a zero") {
        // The allowance 10 h^(1/2) |w| only drops below |w| once h < 1/100.
        const Grid fine = grid2(Geometry::HalfBoxWithGamma, 401, 3, {-0.5, 0.5}, {0, 1}, 0.25, -0.25);
        const ScalarField one = sample(fine, [](double, double, double) { return 1.0; });
        CHECK(kind_of([&] { monotonicity_functional(one, origin, radii, 0.5, opts); }) == ErrorKind::CenterNotZero);
        const ScalarField coarse_one = sample(g, [](double, double, double) { return 1.0; });
        CHECK_NOTHROW(monotonicity_functional(coarse_one, origin, radii, 4.5, opts));
    }
    SUBCASE("strip must fit in the time range") {
        const ScalarField zero(g);
        const std::vector<double> big{0.6};
        CHECK(kind_of([&] { monotonicity_functional(zero, origin, big, 4.5, opts); }) == ErrorKind::StripOutsideGrid);
    }
}

TEST_CASE("Gaussian eigenvalues on the half space") {
    const EigenEstimate none = estimate_halfspace_eigenvalue(6.0, 96, SlitConstraint::None);
    CHECK(std::abs(none.lambda) <= 1e-10);
    const EigenEstimate full = estimate_halfspace_eigenvalue(6.0, 96, SlitConstraint::FullLine);
    CHECK(full.lambda == doctest::Approx(0.5001956679543859).epsilon(1e-9));
    const EigenEstimate slit = estimate_halfspace_eigenvalue(6.0, 96, SlitConstraint::HalfLine);
    CHECK(slit.lambda == doctest::Approx(0.25360212363663576).epsilon(1e-9));
    CHECK(slit.lambda >= 0.225);
    CHECK(slit.lambda <= 0.275);
    CHECK(estimate_halfspace_eigenvalue(5.0, 64).lambda == doctest::Approx(0.2550335677308926).epsilon(1e-9));
    CHECK(kind_of([] { estimate_halfspace_eigenvalue(4.0, 96); }) == ErrorKind::SpecInvalid);
    CHECK(kind_of([] { estimate_halfspace_eigenvalue(6.0, 32); }) == ErrorKind::SpecInvalid);
}

TEST_CASE("free boundary of an unconstrained run is empty") {
    const Builtin b = make_builtin("unconstrained-heat");
    const SolveResult res = march(b.spec, b.grid);
    for (const auto& s : extract_free_boundary(res, b.spec.data, b.spec.eps.eps)) {
        for (auto m : s.coincidence_mask) CHECK(m == 0);
        CHECK(s.interface_points.empty());
    }
    CHECK(kind_of([&] { extract_free_boundary(res, b.spec.data, 0.1 * b.spec.eps.eps); }) == ErrorKind::SpecInvalid);
}

TEST_CASE("free boundary of the stationary and traveling profiles") {
    const Grid g = half_box(65, 9, 2.0, -1.0);
    const ScalarField psi(g);
    for (double omega : {0.0, 0.3}) {
        const auto snaps = extract_free_boundary(profile_field(g, omega), psi, 1e-12);
        REQUIRE(snaps.size() == static_cast<std::size_t>(g.n_time));
        for (const auto& s : snaps) {
            REQUIRE(s.interface_points.size() == 1u);
            CHECK(s.interface_points[0].x2 == 0.0);
            CHECK(std::abs(s.interface_points[0].x1 + omega * s.t) <= g.h);
        }
    }
}

TEST_CASE("parabolic density") {
    SUBCASE("fully coincident and never coincident") {
        const Grid g = grid1(Geometry::Box, 129, 33, 0.0, 1.0, 0.25);
        const ScalarField u(g), psi(g), below = sample(g, [](double, double, double) { return -1.0; });
        const std::vector<double> radii{4 * g.h, 8 * g.h, 16 * g.h};
        const InterfacePoint mid{0.5, 0.0, 0};
        const DensityResult all = parabolic_density(extract_free_boundary(u, psi, 1e-9), g, mid, g.t_end(), radii);
        for (double d : all.density) CHECK(d == 1.0);
        const DensityResult none = parabolic_density(extract_free_boundary(u, below, 1e-9), g, mid, g.t_end(), radii);
        for (double d : none.density) CHECK(d == 0.0);
    }
    SUBCASE("half-line contact has density one half") {
        const Grid g = half_box(129, 9, 0.5, -0.5);
        const auto snaps = extract_free_boundary(profile_field(g, 0.0), ScalarField(g), 1e-12);
        std::vector<double> radii;
        for (int m : {4, 8, 16, 32}) radii.push_back(m * g.h);
        const DensityResult d = parabolic_density(snaps, g, {0.0, 0.0, 0}, g.t_end(), radii);
        for (std::size_t i = 0; i < radii.size(); ++i) CHECK(std::abs(d.density[i] - 0.5) <= 2 * g.h / radii[i]);
        CHECK(kind_of([&] { parabolic_density(snaps, g, {0.0, 0.0, 0}, g.t_end(), std::vector<double>{g.h}); }) ==
              ErrorKind::RadiiUnresolvable);
    }
}

TEST_CASE("nondegeneracy") {
    const Grid g = half_box(129, 65, 1.0, -0.5);
    std::vector<double> radii;
    for (int m : {4, 8, 16, 32}) radii.push_back(m * g.h);
    const SpaceTimePoint origin{0, 0, 0};

    SUBCASE("stationary profile grows like r^(3/2)") {
        const NondegeneracyResult n = nondegeneracy_l(profile_field(g, 0.0), origin, radii);
        REQUIRE(n.has_fit);
        CHECK(n.fit.slope == doctest::Approx(1.5).epsilon(0.05 / 1.5));
        CHECK(n.l_hat == doctest::Approx(2.0 / 3.0).epsilon(0.1));
        CHECK_FALSE(n.degenerate);
    }
    SUBCASE("zero field is degenerate") {
        const NondegeneracyResult n = nondegeneracy_l(ScalarField(g), origin, radii);
        CHECK(n.l_hat == 0.0);
        CHECK(n.degenerate);
    }
    SUBCASE("quadratic growth is degenerate") {
        const Grid box = grid2(Geometry::Box, 129, 65, {-1, 1}, {-1, 1}, 1.0, -0.5);
        const ScalarField q = sample(box, [](double x1, double x2, double) { return x1 * x1 + x2 * x2; });
        const NondegeneracyResult n = nondegeneracy_l(q, origin, radii);
        REQUIRE(n.has_fit);
        CHECK(n.fit.slope == doctest::Approx(2.0).epsilon(0.05));
        CHECK(n.degenerate);
    }
    SUBCASE("radius limits") {
        const ScalarField z(g);
        CHECK(kind_of([&] { nondegeneracy_l(z, origin, std::vector<double>{0.1, 0.2, 0.3}); }) ==
              ErrorKind::RadiiUnresolvable);
        CHECK(kind_of([&] { nondegeneracy_l(z, origin, std::vector<double>{g.h, 0.1, 0.2, 0.3}); }) ==
              ErrorKind::RadiiUnresolvable);
        CHECK(kind_of([&] { nondegeneracy_l(z, origin, std::vector<double>{0.1, 0.2, 0.3, 0.6}); }) ==
              ErrorKind::RadiiUnresolvable);
    }
}

TEST_CASE("hyperbolic blow-up") {
    // h = dt = 1/64: at r = 1/2 and r = 1 every lattice point is a grid node.
    const Grid g = half_box(129, 129, 2.0, -1.0);
    const SpaceTimePoint origin{0, 0, 0};
    for (double omega : {0.0, 0.3}) {
        const ScalarField u = profile_field(g, omega);
        const ScalarField half = hyperbolic_blowup(u, origin, 0.5);
        const ScalarField one = hyperbolic_blowup(u, origin, 1.0);
        CHECK(max_abs_diff(half.values, one.values) <= 1e-12);
        const ScalarField exact = profile_field(half.grid, omega);
        CHECK(max_abs_diff(half.values, exact.values) <= 1e-12);
    }
    const ScalarField u = profile_field(g, 0.3);
    ScalarField twice = u;
    for (double& v : twice.values) v *= 2.0;
    const ScalarField a = hyperbolic_blowup(u, origin, 0.37);
    const ScalarField b = hyperbolic_blowup(twice, origin, 0.37);
    for (std::size_t i = 0; i < a.values.size(); ++i) CHECK(b.values[i] == 2.0 * a.values[i]);
    CHECK(kind_of([&] { hyperbolic_blowup(u, {0.5, 0, 0}, 1.0); }) == ErrorKind::WindowOutsideGrid);
}

TEST_CASE("blow-up profile fit") {
    const ScalarField exact = hyperbolic_blowup(profile_field(half_box(129, 129, 2.0, -1.0), 0.3), {0, 0, 0}, 1.0);
    const ProfileFit f = fit_blowup_profile(exact);
    CHECK(f.omega_hat >= 0.29);
    CHECK(f.omega_hat <= 0.31);
    CHECK(f.linf_error <= 1e-3);

    const Grid lat = exact.grid;
    const ScalarField rotated = sample(lat, [](double x1, double x2, double t) {
        return signorini_profile(x1, x2, t, 0.3, 0.1);
    });
    const ProfileFit r = fit_blowup_profile(rotated);
    CHECK(r.rotation_hat >= 0.08);
    CHECK(r.rotation_hat <= 0.12);

    const ProfileFit z = fit_blowup_profile(ScalarField(lat));
    double peak = 0.0;
    const ScalarField best = sample(lat, [&](double x1, double x2, double t) {
        return signorini_profile(x1, x2, t, z.omega_hat, z.rotation_hat);
    });
    for (int k = 0; k < lat.n_time; ++k) {
        for (int n = 0; n < lat.nodes(); ++n) {
            if (lat.x2(n) <= 0.5) peak = std::max(peak, std::abs(best.at(k, n)));
        }
    }
    CHECK(z.linf_error == doctest::Approx(peak).epsilon(1e-12));
}

TEST_CASE("gradient Hoelder exponent near the free boundary") {
    const Grid g = half_box(129, 5, 0.5, -0.5);
    const ScalarField u = profile_field(g, 0.0);
    const ScalarField psi(g);
    const auto snaps = extract_free_boundary(u, psi, 1e-12);
    std::vector<double> radii;
    for (int m : {2, 4, 8, 16, 32}) radii.push_back(m * g.h);
    const GradientHolderResult r = holder_exponent_gradient(u, psi, snaps, radii);
    REQUIRE(r.has_normal_fit);
    CHECK(r.normal_fit.slope == doctest::Approx(0.5).epsilon(0.2));
    CHECK(r.fit.slope == doctest::Approx(0.5).epsilon(0.2));

    const ScalarField smooth = sample(g, [](double x1, double x2, double) { return 1.0 + x1 * x1 + x2; });
    const auto none = extract_free_boundary(smooth, psi, 1e-12);
    CHECK(kind_of([&] { holder_exponent_gradient(smooth, psi, none, radii); }) == ErrorKind::EmptyFreeBoundary);
}

TEST_CASE("report JSON always carries every key") {
    RegularityReport rep;
    rep.problem = "x";
    const auto j = report_to_json(rep);
    for (const std::string& k : report_keys()) {
        CAPTURE(k);
        CHECK(j.contains(k));
    }
    CHECK(j.at("lambda_hat").is_null());
    rep.lambda_hat = 0.25;
    rep.modulus_table = {{0.1, 0.2}, {0.2, 0.3}};
    CHECK(report_to_json(rep).at("lambda_hat") == 0.25);
    std::istringstream csv(series_to_csv(rep.modulus_table, "oscillation"));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "r,oscillation");
    for (const SeriesPoint& p : rep.modulus_table) {
        REQUIRE(std::getline(csv, line));
        const auto comma = line.find(',');
        CHECK(std::stod(line.substr(0, comma)) == p.r);
        CHECK(std::stod(line.substr(comma + 1)) == p.value);
    }
    CHECK_FALSE(std::getline(csv, line));

    const auto dir = scratch_dir("report");
    write_report(dir, rep);
    for (const char* f : {"report.json", "modulus.csv", "density.csv", "phi.csv"}) CHECK(std::filesystem::exists(dir / f));
}

}  // TEST_SUITE
