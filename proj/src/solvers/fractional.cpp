#include "parobs/solvers/fractional.hpp"

#include "parobs/core/error.hpp"
#include "parobs/core/field.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>

namespace parobs {

namespace {

// FFTW's planner is not thread-safe; execution on distinct arrays is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

void require_periodic(const Grid& grid) {
    if (grid.geometry != Geometry::PeriodicLine) {
        throw Error(ErrorKind::GeometryMismatch, "fractional operator needs a PeriodicLine grid");
    }
}

}  // namespace

std::vector<double> fractional_multiplier(const Grid& grid, double s) {
    require_periodic(grid);
    const int n = grid.n_space;
    const double L = grid.extent[0].length();
    std::vector<double> lam(n / 2 + 1);
    for (int m = 0; m <= n / 2; ++m) {
        const double k = 2.0 * std::numbers::pi * m / L;
        lam[m] = m == 0 ? 0.0 : std::pow(k * k, s);
    }
    return lam;
}

struct FractionalStepper::Plans {
    int n = 0;
    double* real = nullptr;
    fftw_complex* spec = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;

    explicit Plans(int n_) : n(n_) {
        std::lock_guard<std::mutex> lock(planner_mutex());
        real = fftw_alloc_real(n);
        spec = fftw_alloc_complex(n / 2 + 1);
        fwd = fftw_plan_dft_r2c_1d(n, real, spec, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_c2r_1d(n, spec, real, FFTW_ESTIMATE);
    }
    ~Plans() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
        fftw_free(real);
        fftw_free(spec);
    }
    Plans(const Plans&) = delete;
    Plans& operator=(const Plans&) = delete;

    // out = FFT^{-1}[ mult .* FFT[in] ], normalized. Scratch arrays are per call.
    void filter(std::span<const double> in, const std::vector<double>& mult, std::span<double> out) const {
        std::vector<double> r(in.begin(), in.end());
        std::vector<std::complex<double>> c(n / 2 + 1);
        auto* cp = reinterpret_cast<fftw_complex*>(c.data());
        fftw_execute_dft_r2c(fwd, r.data(), cp);
        for (int m = 0; m <= n / 2; ++m) c[m] *= mult[m] / n;
        fftw_execute_dft_c2r(bwd, cp, r.data());
        std::copy(r.begin(), r.end(), out.begin());
    }
};

std::vector<double> apply_fractional_laplacian(std::span<const double> u, const Grid& grid, double s) {
    require_periodic(grid);
    if (static_cast<int>(u.size()) != grid.n_space) throw Error(ErrorKind::ShapeMismatch, "slice length");
    FractionalStepper::Plans plans(grid.n_space);
    std::vector<double> out(u.size());
    plans.filter(u, fractional_multiplier(grid, s), out);
    return out;
}

FractionalStepper::FractionalStepper(const Grid& grid, double s, const PenaltyParams& penalty, PicardOptions opts)
    : grid_(grid), s_(s), penalty_(penalty), opts_(opts), lambda_(fractional_multiplier(grid, s)),
      plans_(std::make_unique<Plans>(grid.n_space)) {}

FractionalStepper::~FractionalStepper() = default;

double FractionalStepper::residual(std::span<const double> u, std::span<const double> u_prev,
                                   std::span<const double> psi_next) const {
    std::vector<double> lu(u.size());
    plans_->filter(u, lambda_, lu);
    double r = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double b = beta_and_prime(penalty_, u[i] - psi_next[i]).beta;
        r = std::max(r, std::abs(u[i] - u_prev[i] + grid_.dt * (lu[i] + b)));
    }
    return r;
}

StepOutcome FractionalStepper::step(std::span<const double> u_prev, std::span<const double> psi_next) const {
    const int n = grid_.n_space;
    const double dt = grid_.dt;
    const double c = 0.5 * beta_prime_max(penalty_);
    // The shift only matters while some node is inside the penalty layer; an
    // iterate clear of it gets the plain implicit solve, which is then exact.
    std::vector<double> inv(lambda_.size()), inv_free(lambda_.size());
    for (std::size_t m = 0; m < lambda_.size(); ++m) {
        inv[m] = 1.0 / (1.0 + c * dt + dt * lambda_[m]);
        inv_free[m] = 1.0 / (1.0 + dt * lambda_[m]);
    }

    std::vector<double> u(u_prev.begin(), u_prev.end());
    std::vector<double> rhs(n), next(n);
    int it = 0;
    double change = 0.0;
    for (;;) {
        bool engaged = false;
        for (int i = 0; i < n; ++i) engaged = engaged || u[i] - psi_next[i] < penalty_.eps;
        const double shift = engaged ? c : 0.0;
        for (int i = 0; i < n; ++i) {
            rhs[i] = u_prev[i] + dt * (shift * u[i] - beta_and_prime(penalty_, u[i] - psi_next[i]).beta);
        }
        plans_->filter(rhs, engaged ? inv : inv_free, next);
        ++it;
        change = max_abs_diff(next, u);
        u.swap(next);
        if (change <= opts_.rel_tol * (1.0 + max_abs(u))) break;
        if (it >= opts_.max_iters) {
            throw SolverError(ErrorKind::PicardStalled,
                              "fixed point did not settle in " + std::to_string(opts_.max_iters) + " iterations",
                              change);
        }
    }
    StepOutcome out;
    out.newton_iters = it;
    out.residual = residual(u, u_prev, psi_next);
    out.u = std::move(u);
    return out;
}

}  // namespace parobs
