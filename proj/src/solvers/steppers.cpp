#include "parobs/solvers/steppers.hpp"

#include "parobs/core/error.hpp"

#include <cmath>

namespace parobs {

Stepper::Stepper(const ProblemSpec& spec, const Grid& grid) : spec_(spec), grid_(grid) {
    if (grid.geometry != required_geometry(spec.prototype)) {
        throw Error(ErrorKind::GeometryMismatch, std::string(to_string(spec.prototype)) + " stepper on a " +
                                                     to_string(grid.geometry) + " grid");
    }
    if (spec.prototype == Prototype::Fractional) {
        if (!spec.s) throw Error(ErrorKind::SpecInvalid, "Fractional prototype without s");
        fractional_ = std::make_unique<FractionalStepper>(grid, *spec.s, spec.eps);
    } else {
        system_ = std::make_unique<SteppingSystem>(
            build_stepping_system(grid, spec.prototype, spec.alpha.value_or(0.0)));
    }
}

Stepper::~Stepper() = default;

StepOutcome Stepper::step(std::span<const double> u_prev, int k_next) const {
    const auto psi = spec_.data.psi.slice(k_next);
    if (fractional_) return fractional_->step(u_prev, psi);
    return newton_step(*system_, u_prev, psi, spec_.data.lateral.slice(k_next), spec_.eps);
}

int level_of(const Grid& grid, double t) {
    const double kf = (t - grid.t0) / grid.dt;
    const int k = static_cast<int>(std::lround(kf));
    if (k < 1 || k >= grid.n_time || std::abs(kf - k) > 1e-8) {
        throw Error(ErrorKind::SpecInvalid, "t_next is not a time level of the grid");
    }
    return k;
}

namespace {

std::vector<double> one_step(Prototype expected, std::span<const double> u_prev, const ProblemSpec& spec,
                             const Grid& grid, double t_next) {
    if (spec.prototype != expected) {
        throw Error(ErrorKind::SpecInvalid, std::string("stepper for ") + to_string(expected) + " given a " +
                                                to_string(spec.prototype) + " spec");
    }
    if (static_cast<int>(u_prev.size()) != grid.nodes()) throw Error(ErrorKind::ShapeMismatch, "u_prev length");
    Stepper stepper(spec, grid);
    return stepper.step(u_prev, level_of(grid, t_next)).u;
}

}  // namespace

std::vector<double> step_thick(std::span<const double> u_prev, const ProblemSpec& spec, const Grid& grid, double t_next) {
    return one_step(Prototype::Thick, u_prev, spec, grid, t_next);
}

std::vector<double> step_signorini(std::span<const double> u_prev, const ProblemSpec& spec, const Grid& grid,
                                   double t_next) {
    return one_step(Prototype::Signorini, u_prev, spec, grid, t_next);
}

std::vector<double> step_dynamic(std::span<const double> u_prev, const ProblemSpec& spec, const Grid& grid,
                                 double t_next) {
    return one_step(Prototype::DynamicThin, u_prev, spec, grid, t_next);
}

std::vector<double> step_fractional(std::span<const double> u_prev, const ProblemSpec& spec, const Grid& grid,
                                    double t_next) {
    return one_step(Prototype::Fractional, u_prev, spec, grid, t_next);
}

}  // namespace parobs
