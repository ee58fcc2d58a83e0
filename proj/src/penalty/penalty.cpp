#include "parobs/penalty/penalty.hpp"

#include "parobs/core/error.hpp"

#include <cmath>

namespace parobs {

namespace {
// exp(-700) is about 1e-304; below that the product z^2 e^z also underflows.
constexpr double kUnderflow = -700.0;
}

BetaPair beta_and_prime(const PenaltyParams& p, double s) {
    if (!(s < p.eps)) return {};
    const double z = p.eps / (s - p.eps);
    if (z < kUnderflow) return {};
    const double e = std::exp(z);
    return {-p.scale * e, p.scale * (z * z / p.eps) * e};
}

double beta_prime_max(const PenaltyParams& p) { return p.scale * 4.0 * std::exp(-2.0) / p.eps; }

void validate(const PenaltyParams& p) {
    if (!(p.eps > 0.0) || !std::isfinite(p.eps)) throw Error(ErrorKind::SpecInvalid, "penalty eps must be > 0");
    if (!(p.scale > 0.0) || !std::isfinite(p.scale)) throw Error(ErrorKind::SpecInvalid, "penalty scale must be > 0");
}

}  // namespace parobs
