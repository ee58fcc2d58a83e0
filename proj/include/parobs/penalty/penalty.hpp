#pragma once

namespace parobs {

/// beta(s) = -scale * exp(eps / (s - eps)) for s < eps, 0 otherwise.
///
/// scale = 1 is the bare family. A larger scale lets the reaction reach
/// obstacles whose forcing exceeds 1 in magnitude without changing the shape
/// (monotone, C^1, supported on s < eps).
struct PenaltyParams {
    double eps = 1e-2;
    double scale = 1.0;
};

struct BetaPair {
    double beta = 0.0;
    double beta_prime = 0.0;
};

BetaPair beta_and_prime(const PenaltyParams& p, double s);

/// sup_s beta'(s) = scale * 4 e^{-2} / eps, attained at s = eps/2.
double beta_prime_max(const PenaltyParams& p);

/// Throws SpecInvalid unless eps > 0 and scale > 0, both finite.
void validate(const PenaltyParams& p);

}  // namespace parobs
