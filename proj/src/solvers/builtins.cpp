#include "parobs/solvers/builtins.hpp"

#include "parobs/core/error.hpp"
#include "parobs/oracle/closed_form.hpp"
#include "parobs/solvers/fractional.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>

namespace parobs {

namespace {

constexpr double kPi = std::numbers::pi;

using ObstacleFn = std::function<double(double x1, double t)>;
using SpaceFn = std::function<double(double x1, double x2)>;

/// Everything a generator supplies analytically. The obstacle depends on
/// (x1, t) only; on 2D grids it is extended constantly in x2.
struct Generator {
    ObstacleFn psi, psi_t, psi_tt, lap_psi;
    SpaceFn phi, bilap_phi;
    SampleFn lateral;
};

SampledData fill(const Grid& g, const Generator& gen) {
    SampledData d;
    d.psi = sample(g, [&](double x1, double, double t) { return gen.psi(x1, t); }, "psi");
    d.psi_t = sample(g, [&](double x1, double, double t) { return gen.psi_t(x1, t); }, "psi_t");
    d.psi_tt = sample(g, [&](double x1, double, double t) { return gen.psi_tt(x1, t); }, "psi_tt");
    d.lap_psi = sample(g, [&](double x1, double, double t) { return gen.lap_psi(x1, t); }, "lap_psi");
    d.f = ScalarField(g, "f");
    for (std::size_t q = 0; q < d.f.values.size(); ++q) d.f.values[q] = -(d.lap_psi.values[q] - d.psi_t.values[q]);
    d.phi0.resize(g.nodes());
    d.bilap_phi.resize(g.nodes());
    for (int n = 0; n < g.nodes(); ++n) {
        d.phi0[n] = gen.phi(g.x1(n), g.x2(n));
        d.bilap_phi[n] = gen.bilap_phi(g.x1(n), g.x2(n));
    }
    d.lateral = sample(g, gen.lateral, "lateral");
    return d;
}

Grid grid_for(int dim, Geometry geom, int n_space, int n_time, std::array<Interval, 2> ext, double T, double t0 = 0.0) {
    return make_grid(dim, geom, n_space, n_time, std::span<const Interval>(ext.data(), dim), T, t0);
}

ObstacleFn constant(double c) {
    return [c](double, double) { return c; };
}

Builtin unconstrained_heat(const BuiltinOptions& o) {
    const double T = 0.1;
    Grid g = grid_for(1, Geometry::Box, o.n_space.value_or(101), o.n_time.value_or(101), {Interval{0.0, 1.0}}, T);
    Generator gen{constant(-10.0), constant(0.0), constant(0.0), constant(0.0),
                  [](double x, double) { return std::sin(kPi * x); },
                  [](double x, double) { return std::pow(kPi, 4) * std::sin(kPi * x); },
                  [](double x, double, double t) { return std::exp(-kPi * kPi * t) * std::sin(kPi * x); }};
    ProblemSpec spec{"unconstrained-heat", Prototype::Thick, fill(g, gen), {}, {}, {o.eps.value_or(1e-2), o.scale.value_or(1.0)}, T};
    return {std::move(spec), g};
}

// Static concave cap; the reaction needed to hold u on it is -Lap psi = 8.
Builtin thick_active(const BuiltinOptions& o) {
    const double T = 0.1;
    Grid g = grid_for(1, Geometry::Box, o.n_space.value_or(257), o.n_time.value_or(129), {Interval{0.0, 1.0}}, T);
    auto psi = [](double x, double) { return 0.5 - 4.0 * (x - 0.5) * (x - 0.5); };
    Generator gen{psi, constant(0.0), constant(0.0), constant(-8.0),
                  [psi](double x, double) { return std::max(psi(x, 0.0), 0.0); },
                  [](double, double) { return 0.0; },
                  [psi](double x, double, double) { return std::max(psi(x, 0.0), 0.0); }};
    ProblemSpec spec{"thick-active", Prototype::Thick, fill(g, gen), {}, {}, {o.eps.value_or(1e-3), o.scale.value_or(16.0)}, T};
    return {std::move(spec), g};
}

// Two-mode heat solution kept well above a slowly oscillating obstacle, so the
// gap never closes and u_tt changes sign only through the third mode.
Builtin thick_smooth(const BuiltinOptions& o) {
    const double T = 0.3;
    Grid g = grid_for(1, Geometry::Box, o.n_space.value_or(129), o.n_time.value_or(65), {Interval{0.0, 1.0}}, T);
    const double pi4 = std::pow(kPi, 4);
    Generator gen{[](double x, double t) { return -0.5 - 4.0 * (x - 0.5) * (x - 0.5) + 0.2 * std::sin(kPi * t); },
                  [](double, double t) { return 0.2 * kPi * std::cos(kPi * t); },
                  [](double, double t) { return -0.2 * kPi * kPi * std::sin(kPi * t); },
                  constant(-8.0),
                  [](double x, double) { return std::sin(kPi * x) + 0.25 * std::sin(3.0 * kPi * x); },
                  [pi4](double x, double) { return pi4 * (std::sin(kPi * x) + 0.25 * 81.0 * std::sin(3.0 * kPi * x)); },
                  [](double, double, double) { return 0.0; }};
    ProblemSpec spec{"thick-smooth", Prototype::Thick, fill(g, gen), {}, {}, {o.eps.value_or(1e-3), o.scale.value_or(16.0)}, T};
    return {std::move(spec), g};
}

double bump(double x1, double x2) { return x2 * (2.0 - x2) * (1.0 - x1 * x1); }

// Steady thin-obstacle profile as lateral data, started below it in the interior.
Builtin signorini_stationary(const BuiltinOptions& o) {
    const double T = 2.0;
    const double A = stationary_bump_amplitude();
    Grid g = grid_for(2, Geometry::HalfBoxWithGamma, o.n_space.value_or(65), o.n_time.value_or(129),
                      {Interval{-1.0, 1.0}, Interval{0.0, 2.0}}, T);
    Generator gen{constant(0.0), constant(0.0), constant(0.0), constant(0.0),
                  [A](double x1, double x2) { return signorini_profile(x1, x2, 0.0) - A * bump(x1, x2); },
                  [A](double, double) { return -8.0 * A; },
                  [](double x1, double x2, double) { return signorini_profile(x1, x2, 0.0); }};
    ProblemSpec spec{"signorini-stationary", Prototype::Signorini, fill(g, gen), {}, {}, {o.eps.value_or(1e-3), o.scale.value_or(4.0)}, T};
    return {std::move(spec), g};
}

// Traveling profile on a small cylinder around the origin. The profile is
// invariant under u(rx, rt)/r^{3/2}, and on a cylinder of size d the heat
// operator differs from its elliptic limit by a relative O(omega d).
Builtin signorini_traveling(const BuiltinOptions& o) {
    const TravelingParams p = traveling_params();
    const double d = p.half_width;
    const double w = p.omega;
    Grid g = grid_for(2, Geometry::HalfBoxWithGamma, o.n_space.value_or(129), o.n_time.value_or(129),
                      {Interval{-d, d}, Interval{0.0, 2.0 * d}}, 2.0 * d, -d);
    Generator gen{constant(0.0), constant(0.0), constant(0.0), constant(0.0),
                  [d, w](double x1, double x2) { return signorini_profile(x1, x2, -d, w); },
                  [](double, double) { return 0.0; },
                  [w](double x1, double x2, double t) { return signorini_profile(x1, x2, t, w); }};
    ProblemSpec spec{"signorini-traveling", Prototype::Signorini, fill(g, gen), {}, {}, {o.eps.value_or(1e-5), o.scale.value_or(1.0)}, 2.0 * d};
    return {std::move(spec), g};
}

Builtin fractional_active(const BuiltinOptions& o) {
    const double T = 0.1;
    const double s = o.s.value_or(0.5);
    Grid g = grid_for(1, Geometry::PeriodicLine, o.n_space.value_or(256), o.n_time.value_or(41),
                      {Interval{0.0, 2.0 * kPi}}, T);
    auto psi = [](double x, double) { return std::max(0.5 - 0.5 * (x - kPi) * (x - kPi), 0.0); };

    // The obstacle's own operator value, -(-Lap)^s psi, stands in for Lap psi.
    std::vector<double> psi0(g.nodes());
    for (int n = 0; n < g.nodes(); ++n) psi0[n] = psi(g.x1(n), 0.0);
    const std::vector<double> frac = apply_fractional_laplacian(psi0, g, s);
    auto lap = [frac, g](double x, double) { return -frac[static_cast<std::size_t>(std::lround((x - g.extent[0].lo) / g.h)) % frac.size()]; };

    // Reaction needed on the cap is (-Lap)^s psi there; leave a factor 2 of headroom.
    double reaction = 0.0;
    for (int n = 0; n < g.nodes(); ++n) {
        if (psi0[n] > 0.25) reaction = std::max(reaction, frac[n]);
    }
    const double scale = o.scale.value_or(std::max(1.0, std::ceil(2.0 * reaction)));

    Generator gen{psi, constant(0.0), constant(0.0), lap, [psi](double x, double) { return psi(x, 0.0); },
                  [](double, double) { return 0.0; }, [psi](double x, double, double) { return psi(x, 0.0); }};
    ProblemSpec spec{"fractional-active", Prototype::Fractional, fill(g, gen), {}, s, {o.eps.value_or(1e-3), scale}, T};
    return {std::move(spec), g};
}

// Obstacle caloric in x1, so Lap psi~ - psi~_t = 0 and f_t = 0.
Builtin dynamic_caloric(const BuiltinOptions& o) {
    const double T = 0.5;
    const double k = kPi / 2.0;
    Grid g = grid_for(2, Geometry::HalfBoxWithGamma, o.n_space.value_or(33), o.n_time.value_or(33),
                      {Interval{-1.0, 1.0}, Interval{0.0, 2.0}}, T);
    Generator gen{[k](double x, double t) { return -0.25 + 0.5 * std::exp(-k * k * t) * std::cos(k * x); },
                  [k](double x, double t) { return -0.5 * k * k * std::exp(-k * k * t) * std::cos(k * x); },
                  [k](double x, double t) { return 0.5 * std::pow(k, 4) * std::exp(-k * k * t) * std::cos(k * x); },
                  [k](double x, double t) { return -0.5 * k * k * std::exp(-k * k * t) * std::cos(k * x); },
                  [k](double x1, double x2) { return 0.3 * std::cos(k * x1) * (1.0 - 0.5 * x2); },
                  [k](double x1, double x2) { return 0.3 * std::pow(k, 4) * std::cos(k * x1) * (1.0 - 0.5 * x2); },
                  [](double, double, double) { return 0.0; }};
    ProblemSpec spec{"dynamic-caloric", Prototype::DynamicThin, fill(g, gen), o.alpha.value_or(0.5), {},
                     {o.eps.value_or(1e-2), o.scale.value_or(1.0)}, T};
    return {std::move(spec), g};
}

}  // namespace

const std::vector<std::string>& builtin_names() {
    static const std::vector<std::string> names{"unconstrained-heat",  "thick-active",      "thick-smooth",
                                                "signorini-stationary", "signorini-traveling", "fractional-active",
                                                "dynamic-caloric"};
    return names;
}

bool is_builtin(const std::string& name) {
    const auto& n = builtin_names();
    return std::find(n.begin(), n.end(), name) != n.end();
}

TravelingParams traveling_params() { return {}; }

double stationary_bump_amplitude() { return 0.5; }

Builtin make_builtin(const std::string& name, const BuiltinOptions& opts) {
    if (name == "unconstrained-heat") return unconstrained_heat(opts);
    if (name == "thick-active") return thick_active(opts);
    if (name == "thick-smooth") return thick_smooth(opts);
    if (name == "signorini-stationary") return signorini_stationary(opts);
    if (name == "signorini-traveling") return signorini_traveling(opts);
    if (name == "fractional-active") return fractional_active(opts);
    if (name == "dynamic-caloric") return dynamic_caloric(opts);
    throw Error(ErrorKind::ConfigInvalid, "problem.test: unknown built-in '" + name + "'");
}

}  // namespace parobs
