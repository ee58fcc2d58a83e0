#pragma once

#include "parobs/core/field.hpp"
#include "parobs/core/grid.hpp"
#include "parobs/solvers/problem.hpp"

#include <array>
#include <filesystem>
#include <functional>
#include <numbers>
#include <string>

namespace parobs::testing {

inline constexpr double kPi = std::numbers::pi;

inline Grid grid1(Geometry geom, int n, int nt, double lo, double hi, double T, double t0 = 0.0) {
    const std::array<Interval, 1> ext{Interval{lo, hi}};
    return make_grid(1, geom, n, nt, ext, T, t0);
}

inline Grid grid2(Geometry geom, int n, int nt, Interval a, Interval b, double T, double t0 = 0.0) {
    const std::array<Interval, 2> ext{a, b};
    return make_grid(2, geom, n, nt, ext, T, t0);
}

/// Data for hand-built problems. The obstacle only enters through psi, so
/// psi_t and lap_psi are filled with zeros unless a test needs them.
struct DataFns {
    SampleFn psi = [](double, double, double) { return 0.0; };
    std::function<double(double, double)> phi = [](double, double) { return 0.0; };
    SampleFn lateral = [](double, double, double) { return 0.0; };
};

inline SampledData make_data(const Grid& g, const DataFns& fns) {
    SampledData d;
    d.psi = sample(g, fns.psi, "psi");
    d.psi_t = ScalarField(g, "psi_t");
    d.lap_psi = ScalarField(g, "lap_psi");
    d.f = ScalarField(g, "f");
    d.lateral = sample(g, fns.lateral, "lateral");
    d.phi0.resize(g.nodes());
    for (int n = 0; n < g.nodes(); ++n) d.phi0[n] = fns.phi(g.x1(n), g.x2(n));
    return d;
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("parobs-unit-" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace parobs::testing
