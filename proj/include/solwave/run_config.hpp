#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "solwave/minimizer.hpp"

namespace solwave {

enum class TaskType { Check, Solve, Sweep, Evolve };

struct TaskConfig {
    TaskType type = TaskType::Check;
    double mu = 0.0;               // solve / evolve
    std::vector<double> mu_list;   // sweep
    double xi_max = 100.0;         // check
    int samples = 512;             // check
    double t_end = 0.0;            // evolve
    double dt = 0.0;               // evolve; 0 = use the heuristic default
    int snapshots = 8;             // evolve
};

struct OutputConfig {
    std::string directory = "out";
    bool write_profile = true;
    bool write_plot_data = true;
};

/**
 * Fully validated run description. The model block keeps the symbol and
 * nonlinearity as declared; with normalize = true the solver works on the
 * zero-shifted symbol and the cutoff nonlinearity, and wave speeds are
 * reported in both frames.
 */
struct RunConfig {
    SymbolSpec symbol;             // as declared
    NonlinearitySpec nonlinearity; // as declared
    bool normalize = true;

    // numerics defaults shared by every task
    int modes = 2048;
    double domain_factor = 40.0;
    double grad_tol_factor = 1e-9;
    double e_tol = 1e-12;
    int max_iters = 20000;
    int padding_factor = 2;
    bool precondition = true;
    bool symmetrize_flag = false;
    BSearchRange b_search;

    TaskConfig task;
    OutputConfig output;
    std::uint64_t seed = 12345;

    /// Symbol in the solve frame (zero-shifted when normalize is on).
    SymbolSpec solve_symbol() const { return normalize ? shift_symbol(symbol) : symbol; }
    /// Nonlinearity in the solve frame (cutoff applied when normalize is on).
    NonlinearitySpec solve_nonlinearity() const {
        return normalize ? cutoff_nonlinearity(nonlinearity) : nonlinearity;
    }

    SolveConfig solve_config(double mu) const;
};

/// Parse and validate a JSON config; unknown keys are rejected with their path.
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);

/// The effective configuration with every default filled in, as deterministic
/// JSON; echoed into reports so they are self-describing.
std::string effective_config_json(const RunConfig& cfg);

}  // namespace solwave
