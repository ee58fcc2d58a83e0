#include "parobs/cli/acceptance.hpp"

#include "parobs/cli/invariants.hpp"
#include "parobs/diagnostics/blowup.hpp"
#include "parobs/diagnostics/eigenvalue.hpp"
#include "parobs/diagnostics/free_boundary.hpp"
#include "parobs/diagnostics/gradient.hpp"
#include "parobs/diagnostics/modulus.hpp"
#include "parobs/diagnostics/monotonicity.hpp"
#include "parobs/diagnostics/quasiconvexity.hpp"
#include "parobs/oracle/closed_form.hpp"
#include "parobs/oracle/reference.hpp"
#include "parobs/solvers/builtins.hpp"
#include "parobs/solvers/fractional.hpp"
#include "parobs/solvers/march.hpp"
#include "parobs/solvers/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace parobs {

namespace {

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

struct Outcome {
    bool ok = true;
    std::string detail;

    void check(bool cond, const std::string& what) {
        ok = ok && cond;
        if (!detail.empty()) detail += "; ";
        detail += what;
        if (!cond) detail += " [FAIL]";
    }
};

bool in(double v, double lo, double hi) { return v >= lo && v <= hi; }

// 1. Penalized solutions approach the obstacle-problem solution.
Outcome penalization_convergence(const AcceptanceOptions& opts) {
    Outcome o;
    const Builtin b = make_builtin("thick-active");
    const std::vector<double> eps = {1e-1, 1e-2, 1e-3};
    const SweepTable t = eps_sweep(b.spec, b.grid, eps, opts.jobs);
    double prev = std::numeric_limits<double>::infinity();
    for (const SweepRow& r : t.rows) {
        const double e = r.error_vs_reference.value_or(std::numeric_limits<double>::infinity());
        o.check(e <= 3.0 * r.eps && e < prev, fmt("eps=%g: |u - u_psor| = %.3e (<= %.0e)", r.eps, e, 3.0 * r.eps));
        prev = e;
    }
    return o;
}

// 2. Lower bound on u_tt, with the tolerance taken from the trend over three grids.
Outcome quasiconvexity(const AcceptanceOptions&) {
    Outcome o;
    const std::pair<int, int> grids[] = {{33, 17}, {65, 33}, {129, 65}};
    double margin[3], size[3];
    for (int g = 0; g < 3; ++g) {
        BuiltinOptions bo;
        bo.n_space = grids[g].first;
        bo.n_time = grids[g].second;
        const Builtin b = make_builtin("thick-smooth", bo);
        const SolveResult r = march(b.spec, b.grid);
        double min_gap = std::numeric_limits<double>::infinity();
        for (const StepRecord& s : r.per_step) min_gap = std::min(min_gap, s.min_gap);
        const QuasiconvexityResult q = quasiconvexity_check(r, b.spec.data);
        margin[g] = q.pass_margin;
        size[g] = b.grid.h * b.grid.h + b.grid.dt;
        o.check(min_gap > b.spec.eps.eps, fmt("%d: min gap %.3f", grids[g].first, min_gap));
        o.check(q.boundary_min <= q.interior_min,
                fmt("%d: utt_min %.1f at k=%d (boundary %.1f, interior %.1f)", grids[g].first, q.utt_min, q.argmin_k,
                    q.boundary_min, q.interior_min));
    }
    // pass_margin(e) ~ m0 + C e with e = h^2 + dt; C from the two coarse grids
    const double C = (margin[0] - margin[1]) / (size[0] - size[1]);
    const double tol = std::abs(C) * size[2];
    o.check(margin[2] >= -tol, fmt("pass_margin %.1f / %.1f / %.1f, tol = |C| e = %.1f, extrapolated %.1f", margin[0],
                                   margin[1], margin[2], tol, margin[2] - C * size[2]));
    return o;
}

// 3. Gaussian-weighted eigenvalue with the half-line slit.
Outcome halfspace_eigenvalue(const AcceptanceOptions&) {
    Outcome o;
    const EigenEstimate slit = estimate_halfspace_eigenvalue(6.0, 96, SlitConstraint::HalfLine);
    const EigenEstimate none = estimate_halfspace_eigenvalue(6.0, 96, SlitConstraint::None);
    const EigenEstimate full = estimate_halfspace_eigenvalue(6.0, 96, SlitConstraint::FullLine);
    o.check(in(slit.lambda, 0.225, 0.275), fmt("slit %.5f", slit.lambda));
    o.check(std::abs(none.lambda) <= 1e-8, fmt("free %.1e", none.lambda));
    o.check(in(full.lambda, 0.45, 0.55), fmt("full line %.5f", full.lambda));
    return o;
}

// 4. phi(r) on the stationary normal derivative and on a homogeneous control.
Outcome monotonicity(const AcceptanceOptions&) {
    Outcome o;
    const double L = 4.5;
    const int n = static_cast<int>(std::lround(2.0 * L * 160.0)) + 1;
    const Interval ext[2] = {{-L, L}, {0.0, 2.0 * L}};
    const Grid g = make_grid(2, Geometry::HalfBoxWithGamma, n, 3, ext, 0.25, -0.25);
    const double radii[] = {0.05, 0.1, 0.2, 0.4};
    const ScalarField w = sample(g, [](double a, double b, double) { return signorini_profile_gradient(a, b, 0.0)[1]; });
    const auto phi = monotonicity_functional(w, {0, 0, 0}, radii, L);
    double worst = 0.0;
    for (std::size_t i = 0; i < phi.size(); ++i)
        for (std::size_t j = i + 1; j < phi.size(); ++j)
            worst = std::max(worst, (phi[i].phi - phi[j].phi) / phi[i].phi);
    o.check(worst <= 1e-3, fmt("phi(0.05..0.4) = %.6f .. %.6f, largest relative drop %.1e", phi.front().phi,
                               phi.back().phi, worst));

    const ScalarField h = sample(g, [](double a, double b, double) {
        return std::sqrt(std::hypot(a, b)) * std::cos(0.5 * std::atan2(b, a));
    });
    const auto ph = monotonicity_functional(h, {0, 0, 0}, radii, L);
    double lo = ph[0].phi, hi = ph[0].phi;
    for (const PhiPoint& p : ph) {
        lo = std::min(lo, p.phi);
        hi = std::max(hi, p.phi);
    }
    o.check((hi - lo) <= 1e-2 * lo, fmt("homogeneous control spread %.1e", (hi - lo) / lo));
    return o;
}

std::vector<FreeBoundarySnapshot> late_snapshots(const std::vector<FreeBoundarySnapshot>& all, int n_time) {
    std::vector<FreeBoundarySnapshot> out;
    for (const auto& s : all)
        if (s.k >= n_time / 2 && s.k % 4 == 0) out.push_back(s);
    return out;
}

// 5. C^{1/2} growth of the gradient away from the free boundary.
Outcome gradient_regularity(const AcceptanceOptions&) {
    Outcome o;
    const double radii[] = {0.05, 0.08, 0.125, 0.2, 0.32, 0.5};
    {
        const Interval ext[2] = {{-1.0, 1.0}, {0.0, 2.0}};
        const Grid g = make_grid(2, Geometry::HalfBoxWithGamma, 129, 9, ext, 0.5);
        const ScalarField u = sample(g, [](double a, double b, double t) { return signorini_profile(a, b, t); });
        const ScalarField psi(g);
        const auto r = holder_exponent_gradient(u, psi, extract_free_boundary(u, psi, 1e-12), radii);
        o.check(in(r.fit.slope, 0.4, 0.6), fmt("profile %.3f (res %.3f)", r.fit.slope, r.fit.residual));
    }
    for (int n : {33, 65, 129}) {
        BuiltinOptions bo;
        bo.n_space = n;
        bo.n_time = n;
        const Builtin b = make_builtin("signorini-stationary", bo);
        const SolveResult res = march(b.spec, b.grid);
        const auto snaps = late_snapshots(extract_free_boundary(res, b.spec.data, 3.0 * b.spec.eps.eps), n);
        const auto r = holder_exponent_gradient(res.u, b.spec.data.psi, snaps, radii);
        const std::string line = fmt("penalized %d: %.3f (res %.3f)", n, r.fit.slope, r.fit.residual);
        if (n == 129) o.check(in(r.fit.slope, 0.4, 0.6) && r.fit.residual <= 0.1, line);
        else o.detail += "; " + line;
    }
    return o;
}

struct Traveling {
    Builtin b;
    SolveResult r;
};

const Traveling& traveling_solve() {
    static const Traveling t = [] {
        Builtin b = make_builtin("signorini-traveling");
        SolveResult r = march(b.spec, b.grid);
        return Traveling{std::move(b), std::move(r)};
    }();
    return t;
}

// 6. Blow-up limit is the traveling profile with the right speed.
Outcome blowup_profile(const AcceptanceOptions&) {
    Outcome o;
    const Traveling& tr = traveling_solve();
    const double d = traveling_params().half_width;
    const ProfileFit f = fit_blowup_profile(hyperbolic_blowup(tr.r.u, {0, 0, 0}, d));
    o.check(in(f.omega_hat, 0.27, 0.33), fmt("omega %.4f", f.omega_hat));
    o.check(in(f.rotation_hat, -0.03, 0.03), fmt("rotation %.4f", f.rotation_hat));
    o.check(f.linf_relative <= 0.05, fmt("profile error %.2f%%", 100.0 * f.linf_relative));
    const double radii[] = {d / 8, d / 4, d / 2, d};
    const NondegeneracyResult nd = nondegeneracy_l(tr.r.u, {0, 0, 0}, radii);
    o.check(nd.has_fit && in(nd.fit.slope, 1.45, 1.55), fmt("growth exponent %.3f", nd.fit.slope));
    o.check(in(nd.l_hat, 0.9 * 2.0 / 3.0, 1.1 * 2.0 / 3.0), fmt("l_hat %.4f", nd.l_hat));
    return o;
}

// 7. Interface moves at speed omega and sits at density 1/2.
Outcome free_boundary_geometry(const AcceptanceOptions&) {
    Outcome o;
    const Traveling& tr = traveling_solve();
    const Grid& g = tr.b.grid;
    const double omega = traveling_params().omega;
    const auto snaps = extract_free_boundary(tr.r, tr.b.spec.data, 3.0 * tr.b.spec.eps.eps);
    std::vector<double> ts, xs;
    int multiple = 0;
    for (const auto& s : snaps) {
        if (s.interface_points.size() != 1) {
            ++multiple;
            continue;
        }
        ts.push_back(s.t);
        xs.push_back(s.interface_points[0].x1);
    }
    o.check(multiple == 0, fmt("%zu levels with one interface point, %d without", ts.size(), multiple));
    if (ts.size() < 2) return o;
    const LineFit f = fit_line(ts, xs);
    const double span = g.t_end() - g.t0;
    o.check(std::abs(f.slope + omega) * span <= 2.0 * g.h && f.residual <= 2.0 * g.h,
            fmt("slope %.4f vs %.2f (drift %.2e over the run, residual %.1e, 2h = %.1e)", f.slope, -omega,
                std::abs(f.slope + omega) * span, f.residual, 2.0 * g.h));

    const double radii[] = {0.008, 0.016, 0.032};
    const double rmax = radii[2];
    double lo = 1.0, hi = 0.0;
    int points = 0;
    for (const auto& s : snaps) {
        for (const InterfacePoint& p : s.interface_points) {
            if (s.t - rmax * rmax < g.t0 || p.x1 - rmax < g.extent[0].lo || p.x1 + rmax > g.extent[0].hi) continue;
            const DensityResult dr = parabolic_density(snaps, g, p, s.t, radii);
            for (double v : dr.density) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            ++points;
        }
    }
    o.check(points > 0 && lo >= 0.4 && hi <= 0.6, fmt("density in [%.3f, %.3f] at %d points", lo, hi, points));
    return o;
}

ModulusResult modulus_run(const char* name, double eps, std::optional<int> n, std::optional<int> nt, double t_min) {
    BuiltinOptions bo;
    bo.eps = eps;
    bo.n_space = n;
    bo.n_time = nt;
    const Builtin b = make_builtin(name, bo);
    const SolveResult r = march(b.spec, b.grid);
    std::vector<double> radii;
    for (int m : {2, 3, 4, 6, 8, 12, 16, 24}) radii.push_back(m * b.grid.h);
    ModulusOptions mo;
    mo.t_min = t_min;
    return time_derivative_modulus(r, radii, mo);
}

// 8. Modulus of (u - psi)_t^+ independent of eps.
Outcome time_derivative_continuity(const AcceptanceOptions&) {
    Outcome o;
    struct Case {
        const char* name;
        std::optional<int> n, nt;
        double t_min;
    };
    const Case cases[] = {{"thick-active", {}, {}, 0.02},
                          {"signorini-stationary", 129, 257, -std::numeric_limits<double>::infinity()}};
    for (const Case& c : cases) {
        double alpha[2];
        int i = 0;
        for (double eps : {1e-2, 1e-3}) {
            const ModulusResult m = modulus_run(c.name, eps, c.n, c.nt, c.t_min);
            bool decreasing = true;
            for (std::size_t q = 1; q < m.oscillation.size(); ++q)
                decreasing = decreasing && m.oscillation[q - 1] < m.oscillation[q];
            alpha[i++] = m.fit.slope;
            o.check(decreasing && m.has_fit && m.fit.slope > 0.0,
                    fmt("%s eps=%g: osc %.3g..%.3g %s, alpha %.3f", c.name, eps, m.oscillation.front(),
                        m.oscillation.back(), decreasing ? "decreasing" : "not decreasing", m.fit.slope));
        }
        const double var = std::abs(alpha[0] - alpha[1]) / std::max(alpha[0], alpha[1]);
        o.check(var <= 0.15, fmt("%s variation %.1f%%", c.name, 100.0 * var));
    }
    return o;
}

// 9. FFT path vs dense oracle, and the exact s = 1 decay factor.
Outcome fractional_consistency(const AcceptanceOptions&) {
    Outcome o;
    for (double s : {0.25, 0.5, 0.75}) {
        BuiltinOptions bo;
        bo.s = s;
        const Builtin b = make_builtin("fractional-active", bo);
        const SolveResult r = march(b.spec, b.grid);
        const SolveResult ref = solve_reference(b.spec, b.grid);
        const double e = max_abs_diff(r.u.values, ref.u.values);
        o.check(e <= 3.0 * b.spec.eps.eps, fmt("s=%.2f: %.2e", s, e));
    }
    const Interval ext[1] = {{0.0, 2.0 * std::numbers::pi}};
    const Grid g = make_grid(1, Geometry::PeriodicLine, 256, 41, ext, 0.1);
    const FractionalStepper stepper(g, 1.0, PenaltyParams{1e-3, 1.0});
    const std::vector<double> psi(g.nodes(), -100.0);
    double worst = 0.0;
    for (int k : {1, 3, 7, 20}) {
        std::vector<double> u0(g.nodes());
        for (int n = 0; n < g.nodes(); ++n) u0[n] = std::cos(k * g.x1(n));
        const StepOutcome out = stepper.step(u0, psi);
        const double factor = 1.0 / (1.0 + g.dt * k * k);
        for (int n = 0; n < g.nodes(); ++n) worst = std::max(worst, std::abs(out.u[n] - factor * u0[n]));
    }
    o.check(worst <= 1e-12, fmt("s=1 mode decay error %.1e", worst));
    return o;
}

// 10. Module-level property suite.
Outcome invariant_suites(const AcceptanceOptions& opts) {
    Outcome o;
    int failed = 0, total = 0;
    std::string failures;
    for (const InvariantCheck& c : run_invariants(opts.seed)) {
        ++total;
        if (!c.passed) {
            ++failed;
            failures += "; " + c.name + ": " + c.detail;
        }
    }
    o.check(failed == 0, fmt("%d/%d properties hold", total - failed, total) + failures);
    return o;
}

using CriterionFn = Outcome (*)(const AcceptanceOptions&);

struct Entry {
    const char* name;
    CriterionFn fn;
};

constexpr Entry kCriteria[] = {
    {"penalization converges to the variational inequality", penalization_convergence},
    {"quasi-convexity in time", quasiconvexity},
    {"half-space eigenvalue 1/4", halfspace_eigenvalue},
    {"monotonicity formula", monotonicity},
    {"optimal space regularity", gradient_regularity},
    {"blow-up profile and speed", blowup_profile},
    {"free-boundary geometry", free_boundary_geometry},
    {"continuity of (u - psi)_t^+ uniform in eps", time_derivative_continuity},
    {"fractional solver consistency", fractional_consistency},
    {"invariant suites", invariant_suites},
};

}  // namespace

int acceptance_count() { return static_cast<int>(std::size(kCriteria)); }

const char* criterion_name(int id) {
    if (id < 1 || id > acceptance_count()) return "unknown";
    return kCriteria[id - 1].name;
}

CriterionResult run_criterion(int id, const AcceptanceOptions& opts) {
    CriterionResult r;
    r.id = id;
    r.name = criterion_name(id);
    const auto start = std::chrono::steady_clock::now();
    if (id < 1 || id > acceptance_count()) {
        r.detail = "no such criterion";
        return r;
    }
    try {
        const Outcome o = kCriteria[id - 1].fn(opts);
        r.passed = o.ok;
        r.detail = o.detail;
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts,
                                            const std::function<void(const CriterionResult&)>& on_result) {
    std::vector<int> ids = opts.only;
    if (ids.empty())
        for (int i = 1; i <= acceptance_count(); ++i) ids.push_back(i);
    std::vector<CriterionResult> out;
    for (int id : ids) {
        out.push_back(run_criterion(id, opts));
        if (on_result) on_result(out.back());
    }
    return out;
}

std::string format_result(const CriterionResult& r) {
    return fmt("%s %2d %s (%.1f s): ", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds) + r.detail;
}

}  // namespace parobs
