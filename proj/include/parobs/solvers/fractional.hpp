#pragma once

#include "parobs/core/grid.hpp"
#include "parobs/solvers/linear_system.hpp"
#include "parobs/solvers/problem.hpp"

#include <memory>
#include <span>
#include <vector>

namespace parobs {

/// |k_m|^{2s} for m = 0..N/2 with k_m = 2 pi m / L (the half spectrum of a real signal).
std::vector<double> fractional_multiplier(const Grid& grid, double s);

/// (-Lap)^s u on the periodic line via the real FFT.
std::vector<double> apply_fractional_laplacian(std::span<const double> u, const Grid& grid, double s);

struct PicardOptions {
    int max_iters = 200;
    double rel_tol = 1e-10;
};

/// Implicit spectral step with a stabilized fixed point on the penalty:
///   (1 + c dt + dt |k|^{2s}) u^{m+1} = FFT^{-1}[ u_prev + dt (c u^m - beta(u^m - psi)) ],
/// c = sup beta' / 2, iterated until successive iterates agree to rel_tol.
class FractionalStepper {
public:
    FractionalStepper(const Grid& grid, double s, const PenaltyParams& penalty, PicardOptions opts = {});
    ~FractionalStepper();
    FractionalStepper(const FractionalStepper&) = delete;
    FractionalStepper& operator=(const FractionalStepper&) = delete;

    /// Throws SolverError(PicardStalled).
    StepOutcome step(std::span<const double> u_prev, std::span<const double> psi_next) const;

    /// max |u - u_prev + dt (-Lap)^s u + dt beta(u - psi)|.
    double residual(std::span<const double> u, std::span<const double> u_prev, std::span<const double> psi_next) const;

    struct Plans;  ///< FFTW plans and buffers

private:
    Grid grid_;
    double s_;
    PenaltyParams penalty_;
    PicardOptions opts_;
    std::vector<double> lambda_;
    std::unique_ptr<Plans> plans_;
};

}  // namespace parobs
