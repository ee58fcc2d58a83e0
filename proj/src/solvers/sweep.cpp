#include "parobs/solvers/sweep.hpp"

#include "parobs/core/error.hpp"
#include "parobs/oracle/reference.hpp"
#include "parobs/solvers/march.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

namespace parobs {

SweepTable eps_sweep(const ProblemSpec& spec, const Grid& grid, const std::vector<double>& eps_list, int jobs) {
    if (eps_list.size() < 3) throw Error(ErrorKind::SpecInvalid, "eps_sweep needs at least 3 values");
    for (std::size_t q = 1; q < eps_list.size(); ++q) {
        if (!(eps_list[q] < eps_list[q - 1])) throw Error(ErrorKind::SpecInvalid, "eps list must be strictly decreasing");
    }
    validate_spec(spec, grid);

    std::optional<SolveResult> ref;
    if (spec.prototype != Prototype::DynamicThin) ref = solve_reference(spec, grid);

    SweepTable table;
    table.rows.resize(eps_list.size());
    std::vector<std::exception_ptr> errors(eps_list.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t q = next++; q < eps_list.size(); q = next++) {
            try {
                ProblemSpec local = spec;
                local.eps.eps = eps_list[q];
                const SolveResult r = march(local, grid);
                SweepRow row;
                row.eps = eps_list[q];
                row.min_gap = r.per_step.empty() ? 0.0 : r.per_step.front().min_gap;
                for (const StepRecord& s : r.per_step) {
                    row.min_gap = std::min(row.min_gap, s.min_gap);
                    row.max_complementarity = std::max(row.max_complementarity, s.complementarity_defect);
                    row.max_residual = std::max(row.max_residual, s.residual);
                    row.newton_total += s.newton_iters;
                }
                if (ref) row.error_vs_reference = max_abs_diff(r.u.values, ref->u.values);
                table.rows[q] = row;
            } catch (...) {
                errors[q] = std::current_exception();
            }
        }
    };

    const int n_threads = std::clamp(jobs, 1, static_cast<int>(eps_list.size()));
    std::vector<std::thread> pool;
    for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return table;
}

}  // namespace parobs
