#pragma once

#include "parobs/core/field.hpp"
#include "parobs/penalty/penalty.hpp"

#include <optional>
#include <string>
#include <vector>

namespace parobs {

enum class Prototype { Thick, Signorini, DynamicThin, Fractional };

const char* to_string(Prototype p);
Prototype prototype_from_string(const std::string& name);

/// Obstacle, data and their analytic derivatives, all on the solve grid.
/// The obstacle extension is constant in x2, so on HalfBoxWithGamma every
/// psi-derived field is constant along x2.
struct SampledData {
    ScalarField psi;
    ScalarField psi_t;
    ScalarField psi_tt;    ///< may be empty; needed by the quasi-convexity check
    ScalarField lap_psi;
    ScalarField f;         ///< -(Lap psi~ - d_t psi~)
    std::vector<double> phi0;
    std::vector<double> bilap_phi;  ///< Lap^2 phi on the slice; may be empty
    ScalarField lateral;   ///< read only at Dirichlet nodes
};

struct ProblemSpec {
    std::string name;
    Prototype prototype = Prototype::Thick;
    SampledData data;
    std::optional<double> alpha;
    std::optional<double> s;
    PenaltyParams eps;
    double T = 0.0;
};

struct StepRecord {
    int newton_iters = 0;
    double residual = 0.0;
    double complementarity_defect = 0.0;
    double min_gap = 0.0;
};

struct SolveResult {
    ScalarField u;
    ScalarField v;  ///< discrete (u - psi~)_t
    std::vector<StepRecord> per_step;
    double eps_used = 0.0;
};

/// Nodes where the constraint lives: Gamma for the thin prototypes, every node otherwise.
std::vector<int> contact_nodes(const Grid& grid);

/// Geometry each prototype runs on.
Geometry required_geometry(Prototype p);

/// Checks field shapes, parameter presence, geometry and data compatibility.
/// Throws ShapeMismatch, GeometryMismatch or SpecInvalid.
void validate_spec(const ProblemSpec& spec, const Grid& grid);

/// min over the contact set of (phi - psi) at the initial level.
double initial_separation(const ProblemSpec& spec, const Grid& grid);

}  // namespace parobs
