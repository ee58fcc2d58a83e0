#pragma once

#include "parobs/cli/acceptance.hpp"
#include "parobs/cli/config.hpp"
#include "parobs/diagnostics/report.hpp"
#include "parobs/solvers/problem.hpp"

#include <iosfwd>

namespace parobs {

/// Executes one command and writes its artifacts under config.output:
///   solve    problem.json, grid.json, u.bin, v.bin, steps.csv, summary.json
///   sweep    sweep.json, sweep.csv
///   diagnose report.json plus modulus/density/phi CSV series
///   verify   acceptance.json, and one line per criterion on `out`
/// Every command also writes plots.json (suggested axes) where it has series,
/// and metadata.json (timestamp, command), which is the only file that varies
/// between identical runs. Returns the process exit status.
int run(const RunConfig& config, std::ostream& out);

/// Report for a solve of a built-in. Sections that do not apply to the
/// problem are left empty and a note says why.
RegularityReport diagnose_solve(const ProblemSpec& spec, const Grid& grid, const SolveResult& result);

/// Reads a solve output directory back: rebuilds the built-in from
/// problem.json and loads u.bin / v.bin.
struct LoadedSolve {
    std::string test;
    BuiltinOptions options;
    Builtin builtin;
    SolveResult result;
};
LoadedSolve load_solve(const std::filesystem::path& dir);

}  // namespace parobs
