#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace parobs {

struct InvariantCheck {
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

/// Property checks across all modules (penalty shape, kernel mass and heat
/// equation, stencil symmetry, discrete comparison, oracle complementarity,
/// diagnostic purity and scaling). A check that throws is recorded as failed.
/// `seed` drives the randomized spot checks only.
std::vector<InvariantCheck> run_invariants(std::uint64_t seed = 0);

}  // namespace parobs
