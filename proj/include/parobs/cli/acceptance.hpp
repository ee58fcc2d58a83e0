#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace parobs {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct AcceptanceOptions {
    int jobs = 1;
    std::uint64_t seed = 0;
    std::vector<int> only;  ///< empty: all ten
};

int acceptance_count();
const char* criterion_name(int id);

/// Runs one criterion. Exceptions are caught and reported as failures.
CriterionResult run_criterion(int id, const AcceptanceOptions& opts = {});

/// Runs the selected criteria in order, calling `on_result` after each.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts = {},
                                            const std::function<void(const CriterionResult&)>& on_result = {});

/// "PASS  3 halfspace eigenvalue (0.2 s): lambda = 0.2536 ..."
std::string format_result(const CriterionResult& r);

}  // namespace parobs
