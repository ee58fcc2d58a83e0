#pragma once

#include <array>
#include <span>

namespace parobs {

enum class Geometry { Box, HalfBoxWithGamma, PeriodicLine };

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
    double length() const { return hi - lo; }
    bool operator==(const Interval&) const = default;
};

/// Uniform tensor-product space-time lattice.
///
/// Nodes are numbered x1-fastest: node = j * n_space + i for (x1_i, x2_j).
/// On HalfBoxWithGamma the contact face Gamma is the row j = 0 (x2 = extent[1].lo).
/// The periodic line omits the right endpoint, so h = L / n_space there.
struct Grid {
    int dim = 1;
    Geometry geometry = Geometry::Box;
    int n_space = 0;
    double h = 0.0;
    int n_time = 0;
    double dt = 0.0;
    double t0 = 0.0;
    std::array<Interval, 2> extent{};

    int nodes() const { return dim == 1 ? n_space : n_space * n_space; }
    int index(int i, int j = 0) const { return j * n_space + i; }
    int i_of(int node) const { return node % n_space; }
    int j_of(int node) const { return dim == 1 ? 0 : node / n_space; }

    double x(int axis, int i) const { return extent[axis].lo + i * h; }
    double x1(int node) const { return x(0, i_of(node)); }
    double x2(int node) const { return dim == 1 ? 0.0 : x(1, j_of(node)); }
    double time(int k) const { return t0 + k * dt; }
    double t_end() const { return time(n_time - 1); }

    /// Node carries Dirichlet (lateral) data: the outer boundary minus the open face Gamma.
    bool is_dirichlet(int node) const;
    /// Node lies on Gamma and is not a Dirichlet corner.
    bool is_gamma(int node) const;

    bool operator==(const Grid&) const = default;
};

/// Validates and builds a grid; dt = T / (n_time - 1).
/// Throws InvalidGeometry or DegenerateGrid.
Grid make_grid(int dim, Geometry geometry, int n_space, int n_time,
               std::span<const Interval> extent, double T, double t0 = 0.0);

const char* to_string(Geometry g);
Geometry geometry_from_string(const char* name);

}  // namespace parobs
