#include "parobs/cli/acceptance.hpp"

#include <cstdlib>
#include <iostream>
#include <string>

// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.
// An optional argument selects a comma-separated subset, e.g. "3,9".
int main(int argc, char** argv) {
    parobs::AcceptanceOptions opts;
    if (argc > 1) {
        std::string list = argv[1];
        std::size_t pos = 0;
        while (pos <= list.size()) {
            const std::size_t comma = list.find(',', pos);
            const std::string item = list.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            if (!item.empty()) opts.only.push_back(std::atoi(item.c_str()));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    }
    int failed = 0;
    const auto results = parobs::run_acceptance(opts, [&](const parobs::CriterionResult& r) {
        std::cout << parobs::format_result(r) << std::endl;
        if (!r.passed) ++failed;
    });
    std::cout << results.size() - failed << "/" << results.size() << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
