#include "parobs/solvers/problem.hpp"

#include "parobs/core/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace parobs {

const char* to_string(Prototype p) {
    switch (p) {
        case Prototype::Thick: return "Thick";
        case Prototype::Signorini: return "Signorini";
        case Prototype::DynamicThin: return "DynamicThin";
        case Prototype::Fractional: return "Fractional";
    }
    return "Thick";
}

Prototype prototype_from_string(const std::string& name) {
    if (name == "Thick") return Prototype::Thick;
    if (name == "Signorini") return Prototype::Signorini;
    if (name == "DynamicThin") return Prototype::DynamicThin;
    if (name == "Fractional") return Prototype::Fractional;
    throw Error(ErrorKind::SpecInvalid, "unknown prototype '" + name + "'");
}

std::vector<int> contact_nodes(const Grid& grid) {
    std::vector<int> out;
    if (grid.geometry == Geometry::HalfBoxWithGamma) {
        for (int i = 0; i < grid.n_space; ++i) out.push_back(grid.index(i, 0));
    } else {
        out.resize(grid.nodes());
        for (int n = 0; n < grid.nodes(); ++n) out[n] = n;
    }
    return out;
}

Geometry required_geometry(Prototype p) {
    switch (p) {
        case Prototype::Thick: return Geometry::Box;
        case Prototype::Signorini:
        case Prototype::DynamicThin: return Geometry::HalfBoxWithGamma;
        case Prototype::Fractional: return Geometry::PeriodicLine;
    }
    return Geometry::Box;
}

namespace {

void require_field(const ScalarField& f, const Grid& grid, const char* name, bool optional = false) {
    if (optional && f.empty()) return;
    if (!(f.grid == grid)) throw Error(ErrorKind::ShapeMismatch, std::string(name) + " lives on a different grid");
    f.check_shape();
    if (!f.all_finite()) throw Error(ErrorKind::SpecInvalid, std::string(name) + " has non-finite entries");
}

}  // namespace

void validate_spec(const ProblemSpec& spec, const Grid& grid) {
    if (grid.geometry != required_geometry(spec.prototype)) {
        throw Error(ErrorKind::GeometryMismatch, std::string(to_string(spec.prototype)) + " needs a " +
                                                     to_string(required_geometry(spec.prototype)) + " grid");
    }
    validate(spec.eps);
    const SampledData& d = spec.data;
    require_field(d.psi, grid, "psi");
    require_field(d.psi_t, grid, "psi_t");
    require_field(d.psi_tt, grid, "psi_tt", true);
    require_field(d.lap_psi, grid, "lap_psi");
    require_field(d.f, grid, "f");
    require_field(d.lateral, grid, "lateral");
    if (static_cast<int>(d.phi0.size()) != grid.nodes()) throw Error(ErrorKind::ShapeMismatch, "phi0 length");
    if (!d.bilap_phi.empty() && static_cast<int>(d.bilap_phi.size()) != grid.nodes()) {
        throw Error(ErrorKind::ShapeMismatch, "bilap_phi length");
    }

    if (spec.alpha.has_value() != (spec.prototype == Prototype::DynamicThin)) {
        throw Error(ErrorKind::SpecInvalid, "alpha must be given exactly for the DynamicThin prototype");
    }
    if (spec.s.has_value() != (spec.prototype == Prototype::Fractional)) {
        throw Error(ErrorKind::SpecInvalid, "s must be given exactly for the Fractional prototype");
    }
    if (spec.alpha && !(*spec.alpha > 0.0 && *spec.alpha <= 1.0)) {
        throw Error(ErrorKind::SpecInvalid, "alpha must lie in (0, 1]");
    }
    // s = 1 is accepted: it is the periodic heat equation and serves as a consistency check.
    if (spec.s && !(*spec.s > 0.0 && *spec.s <= 1.0)) throw Error(ErrorKind::SpecInvalid, "s must lie in (0, 1]");
    if (!(spec.T > 0.0) || std::abs(spec.T - (grid.t_end() - grid.t0)) > 1e-9 * std::max(1.0, spec.T)) {
        throw Error(ErrorKind::SpecInvalid, "horizon T does not match the grid");
    }

    const double tol = 1e-10 * (1.0 + max_abs(d.phi0));
    for (int n = 0; n < grid.nodes(); ++n) {
        if (grid.is_dirichlet(n) && std::abs(d.lateral.at(0, n) - d.phi0[n]) > tol) {
            throw Error(ErrorKind::SpecInvalid, "lateral data at t0 disagrees with phi0 at node " + std::to_string(n));
        }
    }

    if (spec.prototype == Prototype::DynamicThin) {
        const double ftol = 1e-9 * (1.0 + max_abs(d.f.values));
        for (int k = 1; k < grid.n_time; ++k) {
            if (max_abs_diff(d.f.slice(k), d.f.slice(k - 1)) > ftol) {
                throw Error(ErrorKind::SpecInvalid, "DynamicThin requires a caloric obstacle extension (f_t = 0)");
            }
        }
    }
}

double initial_separation(const ProblemSpec& spec, const Grid& grid) {
    double m = std::numeric_limits<double>::infinity();
    for (int n : contact_nodes(grid)) m = std::min(m, spec.data.phi0[n] - spec.data.psi.at(0, n));
    return m;
}

}  // namespace parobs
