#include "parobs/cli/invariants.hpp"

#include "parobs/core/heat_kernel.hpp"
#include "parobs/core/serialize.hpp"
#include "parobs/core/stencil.hpp"
#include "parobs/diagnostics/blowup.hpp"
#include "parobs/diagnostics/eigenvalue.hpp"
#include "parobs/diagnostics/free_boundary.hpp"
#include "parobs/diagnostics/modulus.hpp"
#include "parobs/diagnostics/monotonicity.hpp"
#include "parobs/diagnostics/quasiconvexity.hpp"
#include "parobs/oracle/closed_form.hpp"
#include "parobs/oracle/psor.hpp"
#include "parobs/oracle/reference.hpp"
#include "parobs/penalty/penalty.hpp"
#include "parobs/solvers/builtins.hpp"
#include "parobs/solvers/march.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

namespace parobs {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(const char* f, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

struct Verdict {
    bool ok;
    std::string detail;
};

Verdict penalty_scan() {
    double worst_fd = 0.0;
    for (double eps : {1e-1, 1e-2, 1e-3}) {
        const PenaltyParams p{eps, 1.0};
        const int n = 100000;
        const double lo = -20.0 * eps, hi = 3.0 * eps;
        double prev = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < n; ++i) {
            const double s = lo + (hi - lo) * i / (n - 1);
            const BetaPair b = beta_and_prime(p, s);
            if (b.beta_prime < 0.0 || b.beta < prev) return {false, fmt("beta decreases near s=%g (eps=%g)", s, eps)};
            if (!(b.beta > -1.0 && b.beta <= 0.0)) return {false, fmt("beta=%g out of (-1,0] at s=%g", b.beta, s)};
            prev = b.beta;
        }
        const double guard = 10.0 * eps * std::cbrt(std::numeric_limits<double>::epsilon());
        for (int i = 0; i < 1000; ++i) {
            const double s = lo + (hi - lo) * (i + 0.5) / 1000;
            if (std::abs(s - eps) < guard || s >= eps) continue;
            const BetaPair b = beta_and_prime(p, s);
            if (b.beta_prime < 1e-300) continue;
            const double z = std::abs(eps / (s - eps));
            const double d = 1e-4 * std::abs(s - eps) / std::max(1.0, z);
            const double fd = (beta_and_prime(p, s + d).beta - beta_and_prime(p, s - d).beta) / (2.0 * d);
            const double rel = std::abs(fd - b.beta_prime) / b.beta_prime;
            worst_fd = std::max(worst_fd, rel);
        }
        for (int i = 0; i < 1000; ++i) {
            const double sigma = -20.0 + 23.0 * i / 999.0;
            const double a = beta_and_prime(PenaltyParams{1e-1, 1.0}, 1e-1 * sigma).beta;
            const double c = beta_and_prime(p, eps * sigma).beta;
            if (std::abs(a - c) > 1e-12) return {false, fmt("beta(eps sigma) depends on eps at sigma=%g", sigma)};
        }
    }
    if (worst_fd > 1e-6) return {false, fmt("beta' vs centered difference off by %.2e relative", worst_fd)};
    return {true, fmt("1e5-point scans monotone and bounded; beta' matches differences to %.1e", worst_fd)};
}

Verdict kernel_mass() {
    double worst = 0.0;
    for (int n : {1, 2}) {
        for (double t : {0.01, 0.1, 1.0}) {
            const double h = std::sqrt(t) / 10.0;
            const int m = 80;  // half-width 8 sqrt(t)
            double sum = 0.0;
            for (int i = -m; i <= m; ++i) {
                const double wi = std::abs(i) == m ? 0.5 : 1.0;
                if (n == 1) {
                    sum += wi * heat_kernel_r2(i * h * i * h, t, 1) * h;
                    continue;
                }
                for (int j = -m; j <= m; ++j) {
                    const double wj = std::abs(j) == m ? 0.5 : 1.0;
                    sum += wi * wj * heat_kernel_r2((i * i + j * j) * h * h, t, 2) * h * h;
                }
            }
            worst = std::max(worst, std::abs(sum - 1.0));
        }
    }
    return {worst <= 1e-4, fmt("max |mass - 1| = %.2e", worst)};
}

Verdict kernel_pde() {
    double worst = 0.0;
    for (int n : {1, 2}) {
        for (double t : {0.1, 0.5, 1.0}) {
            const double d = 1e-3;
            double sup_dt = 0.0, sup_res = 0.0;
            for (double x1 = -3.0; x1 <= 3.0 + 1e-12; x1 += 0.25) {
                for (double x2 = n == 2 ? -3.0 : 0.0; x2 <= (n == 2 ? 3.0 : 0.0) + 1e-12; x2 += 0.25) {
                    auto G = [&](double a, double b, double s) {
                        const double x[2] = {a, b};
                        return heat_kernel(std::span<const double>(x, 2), s, n);
                    };
                    const double g0 = G(x1, x2, t);
                    const double gt = (G(x1, x2, t + d) - G(x1, x2, t - d)) / (2.0 * d);
                    double lap = (G(x1 + d, x2, t) + G(x1 - d, x2, t) - 2.0 * g0) / (d * d);
                    if (n == 2) lap += (G(x1, x2 + d, t) + G(x1, x2 - d, t) - 2.0 * g0) / (d * d);
                    sup_dt = std::max(sup_dt, std::abs(gt));
                    sup_res = std::max(sup_res, std::abs(lap - gt));
                }
            }
            worst = std::max(worst, sup_res / sup_dt);
        }
    }
    return {worst <= 1e-3, fmt("max |Lap G - G_t| / |G_t|_inf = %.2e", worst)};
}

Verdict laplacian_symmetry(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    double worst = 0.0;
    const Interval e2[2] = {{0.0, 1.0}, {0.0, 1.0}};
    const Interval ep[1] = {{0.0, 2.0 * kPi}};
    for (const Grid& g : {make_grid(1, Geometry::Box, 41, 3, e2, 1.0), make_grid(2, Geometry::Box, 23, 3, e2, 1.0),
                          make_grid(1, Geometry::PeriodicLine, 64, 3, ep, 1.0)}) {
        std::vector<double> a(g.nodes()), b(g.nodes());
        for (int q = 0; q < g.nodes(); ++q) {
            a[q] = g.is_dirichlet(q) ? 0.0 : U(rng);
            b[q] = g.is_dirichlet(q) ? 0.0 : U(rng);
        }
        const auto La = fd_laplacian(a, g), Lb = fd_laplacian(b, g);
        double x = 0.0, y = 0.0;
        for (int q = 0; q < g.nodes(); ++q) {
            x += La[q] * b[q];
            y += a[q] * Lb[q];
        }
        worst = std::max(worst, std::abs(x - y) / std::max(std::abs(x), std::abs(y)));
    }
    return {worst <= 1e-12, fmt("max relative asymmetry %.2e", worst)};
}

Verdict quotient_linearity(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    const Interval e[2] = {{0.0, 1.0}, {0.0, 1.0}};
    const Grid g = make_grid(2, Geometry::Box, 17, 9, e, 1.0);
    ScalarField u(g), w(g), c(g);
    for (std::size_t q = 0; q < u.values.size(); ++q) {
        u.values[q] = U(rng);
        w.values[q] = U(rng);
        c.values[q] = 1.5 * u.values[q] - 0.75 * w.values[q];
    }
    double worst = 0.0;
    for (LatticeOffset off : {LatticeOffset{1, 0, 0}, LatticeOffset{0, 0, 1}, LatticeOffset{1, 1, 1}}) {
        const auto qu = second_incremental_quotient(u, off, 2);
        const auto qw = second_incremental_quotient(w, off, 2);
        const auto qc = second_incremental_quotient(c, off, 2);
        double scale = 0.0;
        for (std::size_t q = 0; q < qc.values.values.size(); ++q) {
            const double lin = 1.5 * qu.values.values[q] - 0.75 * qw.values.values[q];
            scale = std::max(scale, std::abs(lin));
            worst = std::max(worst, std::abs(qc.values.values[q] - lin));
        }
        worst /= std::max(scale, 1e-300);
    }
    return {worst <= 1e-12, fmt("max relative deviation %.2e", worst)};
}

Verdict comparison_principle() {
    BuiltinOptions o;
    o.n_space = 65;
    o.n_time = 33;
    const Builtin lo = make_builtin("thick-active", o);
    Builtin hi = make_builtin("thick-active", o);
    const Grid& g = hi.grid;
    for (int n = 0; n < g.nodes(); ++n) hi.spec.data.phi0[n] += 0.05 * std::sin(kPi * g.x1(n));
    for (double& v : hi.spec.data.psi.values) v += 0.01;
    for (int k = 0; k < g.n_time; ++k)
        for (int n = 0; n < g.nodes(); ++n) hi.spec.data.lateral.at(k, n) = hi.spec.data.phi0[n];
    const SolveResult a = march(lo.spec, lo.grid);
    const SolveResult b = march(hi.spec, hi.grid);
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t q = 0; q < a.u.values.size(); ++q) worst = std::max(worst, a.u.values[q] - b.u.values[q]);
    return {worst <= 1e-10, fmt("max (u_low - u_high) = %.2e", worst)};
}

Verdict energy_dissipation() {
    const Builtin b = make_builtin("unconstrained-heat");
    const SolveResult r = march(b.spec, b.grid);
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 0; k < b.grid.n_time; ++k) {
        double e = 0.0;
        for (double x : r.u.slice(k)) e += x * x;
        if (e > prev) return {false, fmt("|u|_2 grows at level %d", k)};
        prev = e;
    }
    return {true, "|u(t)|_2 nonincreasing over all levels"};
}

Verdict utt_minimum_principle() {
    std::string detail;
    for (auto [n, nt] : {std::pair{33, 17}, std::pair{65, 33}, std::pair{129, 65}}) {
        BuiltinOptions o;
        o.n_space = n;
        o.n_time = nt;
        const Builtin b = make_builtin("thick-smooth", o);
        const SolveResult r = march(b.spec, b.grid);
        const QuasiconvexityResult q = quasiconvexity_scan(r.u);
        if (q.boundary_min > q.interior_min)
            return {false, fmt("interior minimum %.4g below boundary minimum %.4g on %dx%d", q.interior_min,
                               q.boundary_min, n, nt)};
        detail += fmt("%s%d: boundary %.4g <= interior %.4g", detail.empty() ? "" : "; ", n, q.boundary_min,
                      q.interior_min);
    }
    return {true, detail};
}

Verdict signorini_signs() {
    BuiltinOptions o;
    o.n_space = 33;
    o.n_time = 65;
    const Builtin b = make_builtin("signorini-stationary", o);
    const SolveResult r = march(b.spec, b.grid);
    const Grid& g = b.grid;
    const double eps = b.spec.eps.eps;
    double min_gap = std::numeric_limits<double>::infinity(), min_flux = min_gap;
    for (int k = 1; k < g.n_time; ++k) {
        for (int i = 1; i + 1 < g.n_space; ++i) {
            const int n0 = g.index(i, 0);
            const double gap = r.u.at(k, n0) - b.spec.data.psi.at(k, n0);
            // ghost closure: (u_1 - u_ghost) / 2h = beta, so -d2 u = -beta
            const double flux = -beta_and_prime(b.spec.eps, gap).beta;
            min_gap = std::min(min_gap, gap);
            min_flux = std::min(min_flux, flux);
        }
    }
    const bool ok = std::min(min_gap, min_flux) >= -3.0 * eps;
    return {ok, fmt("min(u - psi) = %.3g, min(-d2 u) = %.3g, floor -3eps = %.3g", min_gap, min_flux, -3.0 * eps)};
}

Verdict psor_order() {
    const Builtin b = make_builtin("thick-active");
    const auto p = reference_step_problem(b.spec, b.grid, b.spec.data.phi0, 1);
    PsorOptions fwd = reference_psor_options(), rev = fwd;
    rev.reverse = true;
    const auto a = psor_solve(p, fwd), c = psor_solve(p, rev);
    const double d = max_abs_diff(a.z, c.z);
    return {d <= 1e-10, fmt("forward vs reverse sweep differ by %.2e", d)};
}

Verdict psor_random(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    LcpStepProblem p;
    const int n = 400;
    for (int i = 0; i < n; ++i) {
        if (i > 0) p.op.push(i - 1, -1.0);
        p.op.push(i, 2.5 + 0.5 * (U(rng) + 1.0));
        if (i + 1 < n) p.op.push(i + 1, -1.0);
        p.op.end_row();
        p.rhs.push_back(U(rng));
        p.obstacle.push_back(0.3 * U(rng));
        p.constrained.push_back(i % 3 == 0 ? 0 : 1);
    }
    const PsorResult r = psor_solve(p, reference_psor_options());
    const double comp = lcp_complementarity(p, r.z);
    double viol = 0.0;
    for (int i = 0; i < n; ++i)
        if (p.constrained[i]) viol = std::max(viol, p.obstacle[i] - r.z[i]);
    return {r.defect <= 1e-12 && comp <= 1e-9 && viol <= 1e-12,
            fmt("defect %.2e, complementarity %.2e, obstacle violation %.2e", r.defect, comp, viol)};
}

Verdict reference_complementarity() {
    double worst = 0.0;
    std::string where;
    for (const char* name : {"unconstrained-heat", "thick-active", "thick-smooth", "signorini-stationary",
                             "signorini-traveling", "fractional-active"}) {
        // the traveling cylinder is run at half resolution: PSOR needs minutes at 129^2
        BuiltinOptions o;
        if (std::string(name) == "signorini-traveling") o.n_space = o.n_time = 65;
        const Builtin b = make_builtin(name, o);
        const SolveResult r = solve_reference(b.spec, b.grid);
        for (const StepRecord& s : r.per_step) {
            if (s.complementarity_defect > worst) {
                worst = s.complementarity_defect;
                where = name;
            }
        }
    }
    return {worst <= 1e-9, fmt("max step complementarity %.2e%s%s", worst, where.empty() ? "" : " on ", where.c_str())};
}

Verdict profile_signs() {
    double min_val = 0.0, max_d2 = -1.0, max_prod = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double x1 = -1.0 + 2.0 * (i + 0.5) / 1000.0;
        const double t = -0.5 + (i % 7) / 6.0;
        const double u = signorini_profile(x1, 0.0, t, 0.3);
        const double d2 = signorini_profile_gradient(x1, 0.0, t, 0.3)[1];
        min_val = std::min(min_val, u);
        max_d2 = std::max(max_d2, d2);
        max_prod = std::max(max_prod, std::abs(u * d2));
    }
    return {min_val >= 0.0 && max_d2 <= 0.0 && max_prod <= 1e-12,
            fmt("min u = %.2e, max d2 u = %.2e, max |u d2 u| = %.2e", min_val, max_d2, max_prod)};
}

Verdict affine_utt() {
    const Interval e[2] = {{0.0, 1.0}, {0.0, 1.0}};
    const Grid g = make_grid(1, Geometry::Box, 17, 9, e, 2.0);
    const ScalarField u = sample(g, [](double x, double, double t) { return 3.0 * x - 2.0 * t + 0.5 * x * t; });
    const QuasiconvexityResult q = quasiconvexity_scan(u);
    return {q.utt_min == 0.0, fmt("utt_min = %.17g", q.utt_min)};
}

Verdict phi_homogeneity() {
    const Interval e[2] = {{-1.0, 1.0}, {0.0, 2.0}};
    const Grid g = make_grid(2, Geometry::HalfBoxWithGamma, 161, 3, e, 0.5, -0.5);
    const ScalarField w = sample(g, [](double a, double b, double) { return signorini_profile_gradient(a, b, 0.0)[1]; });
    ScalarField w2 = w;
    for (double& v : w2.values) v *= 2.0;
    const double radii[] = {0.1, 0.2, 0.4};
    const auto p1 = monotonicity_functional(w, {0, 0, 0}, radii, 0.9);
    const auto p2 = monotonicity_functional(w2, {0, 0, 0}, radii, 0.9);
    for (std::size_t i = 0; i < p1.size(); ++i)
        if (p2[i].phi != 4.0 * p1[i].phi) return {false, fmt("phi(2w) != 4 phi(w) at r=%g", p1[i].r)};
    return {true, "phi(2w) = 4 phi(w) bit for bit"};
}

Verdict density_properties() {
    const Interval e[2] = {{-1.0, 1.0}, {0.0, 2.0}};
    const Grid g = make_grid(2, Geometry::HalfBoxWithGamma, 65, 17, e, 0.5, 0.0);
    const ScalarField u = sample(g, [](double a, double b, double t) { return signorini_profile(a, b, t, 0.3); });
    const ScalarField psi(g);
    const auto snaps = extract_free_boundary(u, psi, 1e-12);
    auto grown = snaps;
    for (auto& s : grown)
        for (std::size_t q = 0; q < s.nodes.size(); ++q)
            if (g.x1(s.nodes[q]) < 0.25) s.coincidence_mask[q] = 1;
    const double radii[] = {0.0625, 0.125, 0.25, 0.5};
    double lo = 1.0, hi = 0.0;
    for (const auto& s : snaps) {
        for (const InterfacePoint& p : s.interface_points) {
            const auto a = parabolic_density(snaps, g, p, s.t, radii);
            const auto b = parabolic_density(grown, g, p, s.t, radii);
            for (std::size_t i = 0; i < a.density.size(); ++i) {
                lo = std::min(lo, a.density[i]);
                hi = std::max(hi, a.density[i]);
                if (b.density[i] < a.density[i]) return {false, fmt("density drops under mask growth at t=%g", s.t)};
            }
        }
    }
    return {lo >= 0.0 && hi <= 1.0, fmt("densities within [%.3f, %.3f]; monotone under mask growth", lo, hi)};
}

Verdict blowup_scaling() {
    const Interval e[2] = {{-1.0, 1.0}, {0.0, 2.0}};
    const Grid g = make_grid(2, Geometry::HalfBoxWithGamma, 129, 129, e, 2.0, -1.0);
    const ScalarField u = sample(g, [](double a, double b, double t) { return signorini_profile(a, b, t, 0.3); });
    const BlowupLattice lat{33, 17};
    const ScalarField a = hyperbolic_blowup(u, {0, 0, 0}, 0.5, lat);
    const ScalarField b = hyperbolic_blowup(u, {0, 0, 0}, 0.25, lat);
    const double diff = max_abs_diff(a.values, b.values);
    const double bound = g.h / 0.25;
    ScalarField su = u;
    for (double& v : su.values) v *= 2.5;
    const ScalarField c = hyperbolic_blowup(su, {0, 0, 0}, 0.5, lat);
    double lin = 0.0;
    for (std::size_t q = 0; q < c.values.size(); ++q) lin = std::max(lin, std::abs(c.values[q] - 2.5 * a.values[q]));
    return {diff <= bound && lin <= 1e-13 * max_abs(c.values),
            fmt("r=0.5 vs r=0.25 differ by %.2e (h/r = %.2e); linearity defect %.1e", diff, bound, lin)};
}

Verdict eigen_monotone() {
    const double slit = estimate_halfspace_eigenvalue(5.0, 64, SlitConstraint::HalfLine).lambda;
    const double full = estimate_halfspace_eigenvalue(5.0, 64, SlitConstraint::FullLine).lambda;
    return {slit <= full + 1e-6, fmt("slit %.6f <= full line %.6f", slit, full)};
}

Verdict diagnostics_pure() {
    BuiltinOptions o;
    o.n_space = 33;
    o.n_time = 33;
    const Builtin b = make_builtin("signorini-stationary", o);
    const SolveResult r = march(b.spec, b.grid);
    const double radii[] = {0.125, 0.25, 0.5, 1.0};
    const auto m1 = time_derivative_modulus(r, radii), m2 = time_derivative_modulus(r, radii);
    const auto f1 = extract_free_boundary(r, b.spec.data, 3e-3), f2 = extract_free_boundary(r, b.spec.data, 3e-3);
    bool same = m1.oscillation == m2.oscillation && m1.fit.slope == m2.fit.slope && f1.size() == f2.size();
    for (std::size_t i = 0; same && i < f1.size(); ++i) {
        same = f1[i].coincidence_mask == f2[i].coincidence_mask &&
               f1[i].interface_points.size() == f2[i].interface_points.size();
        for (std::size_t q = 0; same && q < f1[i].interface_points.size(); ++q)
            same = f1[i].interface_points[q].x1 == f2[i].interface_points[q].x1;
    }
    return {same, same ? "repeated modulus and free-boundary scans are bit-identical" : "repeated scans differ"};
}

Verdict field_roundtrip(std::mt19937_64& rng) {
    std::normal_distribution<double> N;
    const Interval e[2] = {{-1.0, 1.0}, {0.0, 2.0}};
    ScalarField f(make_grid(2, Geometry::HalfBoxWithGamma, 9, 5, e, 0.3, -0.1), "u");
    for (double& v : f.values) v = N(rng);
    const ScalarField g = decode_field(encode_field(f));
    const bool ok = g.grid == f.grid && g.values == f.values && g.label == f.label;
    return {ok, ok ? "binary container round-trips bit for bit" : "round-trip changed the field"};
}

}  // namespace

std::vector<InvariantCheck> run_invariants(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const std::vector<std::pair<const char*, std::function<Verdict()>>> checks = {
        {"penalty monotone, bounded, self-similar", penalty_scan},
        {"heat kernel mass", kernel_mass},
        {"heat kernel solves the heat equation", kernel_pde},
        {"fd_laplacian symmetric", [&] { return laplacian_symmetry(rng); }},
        {"second quotient linear", [&] { return quotient_linearity(rng); }},
        {"discrete comparison principle", comparison_principle},
        {"energy dissipation", energy_dissipation},
        {"u_tt minimum on the parabolic boundary", utt_minimum_principle},
        {"Signorini sign conditions", signorini_signs},
        {"PSOR sweep-order independence", psor_order},
        {"PSOR complementarity on a random LCP", [&] { return psor_random(rng); }},
        {"reference complementarity on built-ins", reference_complementarity},
        {"closed-form profile sign conditions", profile_signs},
        {"u_tt of an affine-in-t field", affine_utt},
        {"phi quadratic homogeneity", phi_homogeneity},
        {"density bounds and mask monotonicity", density_properties},
        {"blow-up scale invariance and linearity", blowup_scaling},
        {"eigenvalue monotone in the constraint", eigen_monotone},
        {"diagnostics deterministic", diagnostics_pure},
        {"field container round trip", [&] { return field_roundtrip(rng); }},
    };
    std::vector<InvariantCheck> out;
    for (const auto& [name, fn] : checks) {
        InvariantCheck c{name, false, {}, 0.0};
        const auto start = std::chrono::steady_clock::now();
        try {
            const Verdict v = fn();
            c.passed = v.ok;
            c.detail = v.detail;
        } catch (const std::exception& e) {
            c.detail = std::string("error: ") + e.what();
        }
        c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace parobs
