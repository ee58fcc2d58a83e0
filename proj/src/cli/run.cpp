#include "parobs/cli/run.hpp"

#include "parobs/core/error.hpp"
#include "parobs/core/serialize.hpp"
#include "parobs/diagnostics/blowup.hpp"
#include "parobs/diagnostics/eigenvalue.hpp"
#include "parobs/diagnostics/free_boundary.hpp"
#include "parobs/diagnostics/gradient.hpp"
#include "parobs/diagnostics/modulus.hpp"
#include "parobs/diagnostics/monotonicity.hpp"
#include "parobs/diagnostics/quasiconvexity.hpp"
#include "parobs/solvers/march.hpp"
#include "parobs/solvers/sweep.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <ostream>

namespace parobs {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_json(const fs::path& p, const json& j) { write_file_atomic(p, j.dump(2) + "\n"); }

void write_metadata(const fs::path& dir, const RunConfig& c) {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    write_json(dir / "metadata.json", {{"timestamp", stamp}, {"command", to_string(c.command)}, {"seed", c.seed}});
}

void require_test(const RunConfig& c) {
    if (c.test.empty()) throw Error(ErrorKind::ConfigInvalid, "problem.test: missing (use --test or the config)");
    if (!is_builtin(c.test)) throw Error(ErrorKind::ConfigInvalid, "problem.test: unknown built-in '" + c.test + "'");
}

int do_solve(const RunConfig& c, std::ostream& out) {
    require_test(c);
    const Builtin b = make_builtin(c.test, c.options);
    const SolveResult r = march(b.spec, b.grid);
    fs::create_directories(c.output);

    json problem = problem_to_json(c.test, c.options);
    problem["prototype"] = to_string(b.spec.prototype);
    problem["eps_used"] = r.eps_used;
    write_json(c.output / "problem.json", problem);
    write_json(c.output / "grid.json", grid_to_json(b.grid));
    write_field_binary(c.output / "u.bin", r.u);
    write_field_binary(c.output / "v.bin", r.v);
    if (r.u.values.size() <= 200000) write_field_csv(c.output / "u.csv", r.u);

    std::string steps = "k,t,newton_iters,residual,complementarity,min_gap\n";
    double max_res = 0.0, min_gap = std::numeric_limits<double>::infinity();
    int newton = 0;
    for (std::size_t q = 0; q < r.per_step.size(); ++q) {
        const StepRecord& s = r.per_step[q];
        const int k = static_cast<int>(q) + 1;
        steps += std::to_string(k) + "," + num(b.grid.time(k)) + "," + std::to_string(s.newton_iters) + "," +
                 num(s.residual) + "," + num(s.complementarity_defect) + "," + num(s.min_gap) + "\n";
        max_res = std::max(max_res, s.residual);
        min_gap = std::min(min_gap, s.min_gap);
        newton += s.newton_iters;
    }
    write_file_atomic(c.output / "steps.csv", steps);
    write_json(c.output / "summary.json", {{"problem", c.test},
                                           {"eps", r.eps_used},
                                           {"steps", r.per_step.size()},
                                           {"newton_total", newton},
                                           {"max_residual", max_res},
                                           {"min_gap", min_gap}});
    write_json(c.output / "plots.json",
               {{"steps.csv", {{"x", "t"}, {"y", {"residual", "min_gap"}}, {"log_y", true}}}});
    write_metadata(c.output, c);
    out << "solved " << c.test << ": " << r.per_step.size() << " steps, " << newton << " Newton iterations, min gap "
        << min_gap << "\n";
    return 0;
}

int do_sweep(const RunConfig& c, std::ostream& out) {
    require_test(c);
    const Builtin b = make_builtin(c.test, c.options);
    const std::vector<double> eps = c.eps_list.empty() ? std::vector<double>{1e-1, 1e-2, 1e-3} : c.eps_list;
    const SweepTable t = eps_sweep(b.spec, b.grid, eps, c.jobs);
    fs::create_directories(c.output);
    json rows = json::array();
    std::string csv = "eps,error_vs_reference,min_gap,max_complementarity,max_residual,newton_total\n";
    for (const SweepRow& r : t.rows) {
        rows.push_back({{"eps", r.eps},
                        {"error_vs_reference", r.error_vs_reference ? json(*r.error_vs_reference) : json(nullptr)},
                        {"min_gap", r.min_gap},
                        {"max_complementarity", r.max_complementarity},
                        {"max_residual", r.max_residual},
                        {"newton_total", r.newton_total}});
        csv += num(r.eps) + "," + (r.error_vs_reference ? num(*r.error_vs_reference) : std::string()) + "," +
               num(r.min_gap) + "," + num(r.max_complementarity) + "," + num(r.max_residual) + "," +
               std::to_string(r.newton_total) + "\n";
        out << "eps " << r.eps << ": error "
            << (r.error_vs_reference ? num(*r.error_vs_reference) : std::string("n/a")) << ", min gap " << r.min_gap
            << "\n";
    }
    write_json(c.output / "sweep.json", {{"problem", c.test}, {"rows", rows}});
    write_file_atomic(c.output / "sweep.csv", csv);
    write_json(c.output / "plots.json",
               {{"sweep.csv", {{"x", "eps"}, {"y", {"error_vs_reference"}}, {"log_x", true}, {"log_y", true}}}});
    write_metadata(c.output, c);
    return 0;
}

int do_diagnose(const RunConfig& c, std::ostream& out) {
    const fs::path in = c.input.value_or(c.output);
    const LoadedSolve s = load_solve(in);
    RegularityReport rep = diagnose_solve(s.builtin.spec, s.builtin.grid, s.result);
    write_report(c.output, rep);
    write_json(c.output / "plots.json",
               {{"modulus.csv", {{"x", "r"}, {"y", "oscillation"}, {"log_x", true}, {"log_y", true}}},
                {"density.csv", {{"x", "r"}, {"y", "density"}}},
                {"phi.csv", {{"x", "r"}, {"y", "phi"}}}});
    write_metadata(c.output, c);
    out << "report written to " << (c.output / "report.json").string() << "\n";
    return 0;
}

int do_verify(const RunConfig& c, std::ostream& out) {
    AcceptanceOptions opts;
    opts.jobs = c.jobs;
    opts.seed = c.seed;
    const auto results = run_acceptance(opts, [&](const CriterionResult& r) { out << format_result(r) << "\n" << std::flush; });
    bool all = true;
    json arr = json::array();
    for (const auto& r : results) {
        all = all && r.passed;
        arr.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    }
    fs::create_directories(c.output);
    write_json(c.output / "acceptance.json", {{"passed", all}, {"criteria", arr}});
    write_metadata(c.output, c);
    return all ? 0 : 1;
}

std::vector<double> lattice_radii(const Grid& g, std::initializer_list<int> multiples, double r_max) {
    std::vector<double> r;
    for (int m : multiples)
        if (m * g.h <= r_max) r.push_back(m * g.h);
    return r;
}

// count radii spaced geometrically from lo to hi
std::vector<double> geometric_radii(double lo, double hi, int count) {
    std::vector<double> r;
    if (!(hi > lo)) return {lo};
    for (int i = 0; i < count; ++i) r.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1)));
    return r;
}

std::vector<SeriesPoint> series(const std::vector<double>& r, const std::vector<double>& v) {
    std::vector<SeriesPoint> s;
    for (std::size_t i = 0; i < r.size() && i < v.size(); ++i) s.push_back({r[i], v[i]});
    return s;
}

// d/dx2 of u on the 2D grid: one-sided second order on the first and last rows.
ScalarField normal_derivative(const ScalarField& u) {
    const Grid& g = u.grid;
    ScalarField w(g, "d2u");
    const int n = g.n_space;
    for (int k = 0; k < g.n_time; ++k) {
        for (int node = 0; node < g.nodes(); ++node) {
            const int i = g.i_of(node), j = g.j_of(node);
            auto at = [&](int jj) { return u.at(k, g.index(i, jj)); };
            double d;
            if (j == 0) d = (-3.0 * at(0) + 4.0 * at(1) - at(2)) / (2.0 * g.h);
            else if (j == n - 1) d = (3.0 * at(n - 1) - 4.0 * at(n - 2) + at(n - 3)) / (2.0 * g.h);
            else d = (at(j + 1) - at(j - 1)) / (2.0 * g.h);
            w.at(k, node) = d;
        }
    }
    return w;
}

}  // namespace

RegularityReport diagnose_solve(const ProblemSpec& spec, const Grid& g, const SolveResult& r) {
    RegularityReport rep;
    rep.problem = spec.name;
    auto attempt = [&](const char* section, auto&& fn) {
        try {
            fn();
        } catch (const std::exception& e) {
            rep.notes.push_back(std::string(section) + ": " + e.what());
        }
    };
    const double extent = g.extent[0].length();

    attempt("quasiconvexity", [&] {
        const QuasiconvexityResult q = quasiconvexity_check(r, spec.data);
        rep.utt_min = q.utt_min;
        rep.utt_bound = q.utt_bound;
        rep.pass_margin = q.pass_margin;
    });
    attempt("modulus", [&] {
        const auto radii = lattice_radii(g, {2, 3, 4, 6, 8, 12, 16, 24}, 0.25 * extent);
        const ModulusResult m = time_derivative_modulus(r, radii);
        rep.modulus_table = series(m.radii, m.oscillation);
        if (m.has_fit) rep.holder_fit = exponent_fit(m.fit, m.radii);
        else rep.notes.push_back("modulus: fewer than four positive oscillations, no exponent");
    });
    attempt("lambda", [&] { rep.lambda_hat = estimate_halfspace_eigenvalue(6.0, 96).lambda; });

    std::vector<FreeBoundarySnapshot> snaps;
    attempt("free boundary", [&] { snaps = extract_free_boundary(r, spec.data, 3.0 * r.eps_used); });
    const FreeBoundarySnapshot* mid = nullptr;
    for (const auto& s : snaps)
        if (!s.interface_points.empty() && s.k <= g.n_time / 2 + 1 && s.k >= g.n_time / 2) mid = &s;
    if (!mid)
        for (const auto& s : snaps)
            if (!s.interface_points.empty()) mid = &s;
    if (!mid) {
        rep.notes.push_back("free boundary: no interface points; density, gradient and blow-up sections skipped");
        return rep;
    }
    const InterfacePoint p = mid->interface_points.front();

    attempt("density", [&] {
        const auto radii = lattice_radii(g, {2, 4, 8, 16}, 0.25 * extent);
        const DensityResult d = parabolic_density(snaps, g, p, mid->t, radii);
        rep.density_series = series(d.radii, d.density);
        rep.c_hat = d.c_hat;
    });
    attempt("gradient", [&] {
        const auto radii = geometric_radii(2.0 * g.h, 0.25 * extent, 6);
        // the second half of the run, after the initial layer has decayed
        std::vector<FreeBoundarySnapshot> late;
        for (const auto& s : snaps)
            if (s.k >= g.n_time / 2) late.push_back(s);
        const auto gr = holder_exponent_gradient(r.u, spec.data.psi, late, radii);
        rep.gradient_fit = exponent_fit(gr.fit, gr.radii);
    });
    if (g.geometry != Geometry::HalfBoxWithGamma) return rep;

    // Largest radius that keeps space-time balls and blow-up windows in the grid.
    const double room = std::min({p.x1 - g.extent[0].lo, g.extent[0].hi - p.x1, 0.5 * g.extent[1].length(),
                                  mid->t - g.t0, g.t_end() - mid->t});
    const SpaceTimePoint c{p.x1, 0.0, mid->t};
    attempt("nondegeneracy", [&] {
        const auto radii = geometric_radii(std::max(2.0 * g.h, room / 8), room, 4);
        const NondegeneracyResult nd = nondegeneracy_l(r.u, c, radii);
        rep.l_hat = nd.l_hat;
        if (nd.has_fit) rep.growth_fit = exponent_fit(nd.fit, radii);
        if (nd.degenerate) rep.notes.push_back("nondegeneracy: point flagged degenerate");
    });
    attempt("blow-up", [&] {
        const ProfileFit f = fit_blowup_profile(hyperbolic_blowup(r.u, c, room));
        rep.omega_hat = f.omega_hat;
        rep.rotation_hat = f.rotation_hat;
        rep.blowup_error = f.linf_relative;
    });
    attempt("monotonicity", [&] {
        // centre on the Gamma node nearest the interface, with the strip inside the run
        const int i = static_cast<int>(std::lround((p.x1 - g.extent[0].lo) / g.h));
        const SpaceTimePoint centre{g.x(0, i), 0.0, mid->t};
        const double cutoff = std::min({centre.x1 - g.extent[0].lo, g.extent[0].hi - centre.x1, g.extent[1].length()});
        const double rmax = std::min(0.5 * cutoff, std::sqrt(mid->t - g.t0));
        const double radii[] = {rmax / 8, rmax / 4, rmax / 2, rmax};
        const auto phi = monotonicity_functional(normal_derivative(r.u), centre, radii, cutoff);
        for (const PhiPoint& q : phi) rep.phi_series.push_back({q.r, q.phi});
    });
    return rep;
}

LoadedSolve load_solve(const fs::path& dir) {
    json problem;
    try {
        problem = json::parse(read_file(dir / "problem.json"));
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::ConfigInvalid, "input: problem.json is not valid JSON");
    }
    LoadedSolve s;
    json block = problem;
    block.erase("prototype");
    block.erase("eps_used");
    problem_from_json(block, "input/problem.json", s.test, s.options);
    s.builtin = make_builtin(s.test, s.options);
    s.result.u = read_field_binary(dir / "u.bin");
    s.result.v = read_field_binary(dir / "v.bin");
    if (!(s.result.u.grid == s.builtin.grid) || !(s.result.v.grid == s.builtin.grid))
        throw Error(ErrorKind::ShapeMismatch, "input: stored fields do not match the problem's grid");
    s.result.eps_used = problem.value("eps_used", s.builtin.spec.eps.eps);
    return s;
}

int run(const RunConfig& c, std::ostream& out) {
    switch (c.command) {
        case Command::Solve: return do_solve(c, out);
        case Command::Sweep: return do_sweep(c, out);
        case Command::Diagnose: return do_diagnose(c, out);
        case Command::Verify: return do_verify(c, out);
    }
    return 1;
}

}  // namespace parobs
