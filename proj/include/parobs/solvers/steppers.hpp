#pragma once

#include "parobs/solvers/fractional.hpp"
#include "parobs/solvers/linear_system.hpp"
#include "parobs/solvers/problem.hpp"

#include <memory>
#include <span>
#include <vector>

namespace parobs {

/// Prototype-dispatching stepper that keeps the assembled operator (or FFT
/// plans) alive across a march.
class Stepper {
public:
    Stepper(const ProblemSpec& spec, const Grid& grid);
    ~Stepper();

    /// Advances from level k_next - 1 to k_next.
    StepOutcome step(std::span<const double> u_prev, int k_next) const;

    const Grid& grid() const { return grid_; }

private:
    const ProblemSpec& spec_;
    Grid grid_;
    std::unique_ptr<SteppingSystem> system_;
    std::unique_ptr<FractionalStepper> fractional_;
};

/// One-shot steps. t_next must be a time level of the grid.
std::vector<double> step_thick(std::span<const double> u_prev, const ProblemSpec& spec, const Grid& grid, double t_next);
std::vector<double> step_signorini(std::span<const double> u_prev, const ProblemSpec& spec, const Grid& grid,
                                   double t_next);
std::vector<double> step_dynamic(std::span<const double> u_prev, const ProblemSpec& spec, const Grid& grid,
                                 double t_next);
std::vector<double> step_fractional(std::span<const double> u_prev, const ProblemSpec& spec, const Grid& grid,
                                    double t_next);

/// Time level of t on the grid; throws SpecInvalid if t is not (close to) a level.
int level_of(const Grid& grid, double t);

}  // namespace parobs
