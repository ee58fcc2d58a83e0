#include "parobs/core/grid.hpp"

#include "parobs/core/error.hpp"

#include <cmath>
#include <cstring>
#include <string>

namespace parobs {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidGeometry: return "InvalidGeometry";
        case ErrorKind::DegenerateGrid: return "DegenerateGrid";
        case ErrorKind::ShapeMismatch: return "ShapeMismatch";
        case ErrorKind::StepTooLarge: return "StepTooLarge";
        case ErrorKind::NewtonDiverged: return "NewtonDiverged";
        case ErrorKind::GeometryMismatch: return "GeometryMismatch";
        case ErrorKind::PicardStalled: return "PicardStalled";
        case ErrorKind::NotConverged: return "NotConverged";
        case ErrorKind::SpecInvalid: return "SpecInvalid";
        case ErrorKind::MissingDerivativeData: return "MissingDerivativeData";
        case ErrorKind::RadiiUnresolvable: return "RadiiUnresolvable";
        case ErrorKind::CenterNotZero: return "CenterNotZero";
        case ErrorKind::StripOutsideGrid: return "StripOutsideGrid";
        case ErrorKind::IterationStalled: return "IterationStalled";
        case ErrorKind::WindowOutsideGrid: return "WindowOutsideGrid";
        case ErrorKind::EmptyFreeBoundary: return "EmptyFreeBoundary";
        case ErrorKind::ConfigInvalid: return "ConfigInvalid";
        case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

bool Grid::is_dirichlet(int node) const {
    const int i = i_of(node);
    switch (geometry) {
        case Geometry::PeriodicLine:
            return false;
        case Geometry::Box:
            if (i == 0 || i == n_space - 1) return true;
            if (dim == 2) {
                const int j = j_of(node);
                return j == 0 || j == n_space - 1;
            }
            return false;
        case Geometry::HalfBoxWithGamma: {
            const int j = j_of(node);
            return i == 0 || i == n_space - 1 || j == n_space - 1;
        }
    }
    return false;
}

bool Grid::is_gamma(int node) const {
    return geometry == Geometry::HalfBoxWithGamma && j_of(node) == 0 && !is_dirichlet(node);
}

Grid make_grid(int dim, Geometry geometry, int n_space, int n_time,
               std::span<const Interval> extent, double T, double t0) {
    if (dim != 1 && dim != 2) {
        throw Error(ErrorKind::InvalidGeometry, "dimension must be 1 or 2");
    }
    if (geometry == Geometry::HalfBoxWithGamma && dim != 2) {
        throw Error(ErrorKind::InvalidGeometry, "HalfBoxWithGamma requires dim = 2");
    }
    if (geometry == Geometry::PeriodicLine && dim != 1) {
        throw Error(ErrorKind::InvalidGeometry, "PeriodicLine requires dim = 1");
    }
    if (static_cast<int>(extent.size()) < dim) {
        throw Error(ErrorKind::InvalidGeometry, "one extent interval per axis required");
    }
    if (n_space < 3) {
        throw Error(ErrorKind::DegenerateGrid, "n_space must be >= 3");
    }
    if (n_time < 3) {
        throw Error(ErrorKind::DegenerateGrid, "n_time must be >= 3");
    }
    if (!(T > 0.0) || !std::isfinite(T)) {
        throw Error(ErrorKind::DegenerateGrid, "horizon T must be positive");
    }
    for (int a = 0; a < dim; ++a) {
        if (!(extent[a].length() > 0.0)) {
            throw Error(ErrorKind::DegenerateGrid, "extent intervals must have positive length");
        }
    }
    if (dim == 2 && std::abs(extent[0].length() - extent[1].length()) >
                        1e-12 * std::max(extent[0].length(), extent[1].length())) {
        throw Error(ErrorKind::InvalidGeometry, "2D extents must have equal length (uniform h)");
    }

    Grid g;
    g.dim = dim;
    g.geometry = geometry;
    g.n_space = n_space;
    g.n_time = n_time;
    g.t0 = t0;
    g.extent[0] = extent[0];
    g.extent[1] = dim == 2 ? extent[1] : Interval{0.0, 0.0};
    const double L = extent[0].length();
    g.h = geometry == Geometry::PeriodicLine ? L / n_space : L / (n_space - 1);
    g.dt = T / (n_time - 1);
    return g;
}

const char* to_string(Geometry g) {
    switch (g) {
        case Geometry::Box: return "Box";
        case Geometry::HalfBoxWithGamma: return "HalfBoxWithGamma";
        case Geometry::PeriodicLine: return "PeriodicLine";
    }
    return "Box";
}

Geometry geometry_from_string(const char* name) {
    if (std::strcmp(name, "Box") == 0) return Geometry::Box;
    if (std::strcmp(name, "HalfBoxWithGamma") == 0) return Geometry::HalfBoxWithGamma;
    if (std::strcmp(name, "PeriodicLine") == 0) return Geometry::PeriodicLine;
    throw Error(ErrorKind::InvalidGeometry, std::string("unknown geometry '") + name + "'");
}

}  // namespace parobs
