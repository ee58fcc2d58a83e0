#include "parobs/cli/run.hpp"
#include "parobs/core/error.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <sstream>

using namespace parobs;

int main(int argc, char** argv) {
    CLI::App app{"Penalized parabolic obstacle solvers, oracles and regularity diagnostics"};
    std::string command;
    std::string config_path, out_dir, eps_text, grid_text, test, input;
    std::optional<int> jobs;
    std::optional<std::uint64_t> seed;
    std::vector<int> only;

    app.add_option("command", command, "solve | sweep | diagnose | verify (overrides the config)")
        ->check(CLI::IsMember({"solve", "sweep", "diagnose", "verify"}));
    app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--jobs", jobs, "worker threads for sweeps")->check(CLI::PositiveNumber);
    app.add_option("--eps", eps_text, "comma-separated penalty widths, e.g. 1e-1,1e-2,1e-3");
    app.add_option("--grid", grid_text, "NX,NT: nodes per axis and time levels");
    app.add_option("--test", test, "built-in problem name");
    app.add_option("--input", input, "diagnose: directory written by solve");
    app.add_option("--seed", seed, "seed for randomized spot checks");
    app.add_option("--only", only, "verify: run only these criteria")->delimiter(',');
    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig c = config_path.empty() ? RunConfig{} : load_config(config_path);
        if (!command.empty()) c.command = command_from_string(command);
        if (!test.empty()) {
            if (!is_builtin(test)) throw Error(ErrorKind::ConfigInvalid, "problem.test: unknown built-in '" + test + "'");
            c.test = test;
        }
        if (!out_dir.empty()) c.output = out_dir;
        if (!input.empty()) c.input = std::filesystem::path(input);
        if (jobs) c.jobs = *jobs;
        if (seed) c.seed = *seed;
        if (!eps_text.empty()) c.eps_list = parse_eps_list(eps_text);
        if (!grid_text.empty()) {
            int nx = 0, nt = 0;
            char comma = 0, extra = 0;
            std::stringstream ss(grid_text);
            if (!(ss >> nx >> comma >> nt) || comma != ',' || (ss >> extra) || nx < 3 || nt < 3)
                throw Error(ErrorKind::ConfigInvalid, "grid: expected NX,NT with both >= 3");
            c.options.n_space = nx;
            c.options.n_time = nt;
        }
        if (c.command == Command::Verify && !only.empty()) {
            AcceptanceOptions opts;
            opts.jobs = c.jobs;
            opts.seed = c.seed;
            opts.only = only;
            bool ok = true;
            run_acceptance(opts, [&](const CriterionResult& r) {
                std::cout << format_result(r) << "\n" << std::flush;
                ok = ok && r.passed;
            });
            return ok ? 0 : 1;
        }
        return run(c, std::cout);
    } catch (const Error& e) {
        std::cerr << "parobs: " << e.what() << "\n";
        return e.kind() == ErrorKind::ConfigInvalid ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "parobs: " << e.what() << "\n";
        return 1;
    }
}
