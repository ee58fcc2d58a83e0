#pragma once

#include "parobs/solvers/builtins.hpp"

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace parobs {

enum class Command { Solve, Sweep, Diagnose, Verify };

const char* to_string(Command c);
/// Throws ConfigInvalid (path "command") for anything else.
Command command_from_string(const std::string& name);

struct RunConfig {
    Command command = Command::Verify;
    /// Built-in test name. For diagnose it may instead come from the input
    /// directory's problem.json.
    std::string test;
    BuiltinOptions options;
    std::vector<double> eps_list;
    std::filesystem::path output = "parobs-out";
    std::optional<std::filesystem::path> input;  ///< diagnose: a solve output directory
    int jobs = 1;
    std::uint64_t seed = 0;
};

/// Parses a config document. Unknown keys and wrong types are ConfigInvalid
/// with the JSON path of the offending entry, e.g. "problem.test".
RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::filesystem::path& path);

/// The problem block of a config: {"test": ..., "n_space": ..., ...}.
nlohmann::json problem_to_json(const std::string& test, const BuiltinOptions& options);

/// Fills test/options from a problem block (path prefix used in messages).
void problem_from_json(const nlohmann::json& j, const std::string& path, std::string& test, BuiltinOptions& options);

/// "1e-1,1e-2" -> {0.1, 0.01}; ConfigInvalid on junk.
std::vector<double> parse_eps_list(const std::string& text);

}  // namespace parobs
