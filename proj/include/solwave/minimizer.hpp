#pragma once

#include <optional>
#include <string>
#include <vector>

#include "solwave/functionals.hpp"
#include "solwave/sweep.hpp"

namespace solwave {

struct BSearchRange {
    double b_min = 0.02;
    double b_max = 8.0;
    int points = 28;
};

struct SolveConfig {
    double mu = 0.0;
    SymbolSpec symbol;
    NonlinearitySpec nonlinearity;

    // grid policy: box half-length = domain_factor * ansatz width
    double domain_factor = 40.0;
    int modes = 2048;

    // stopping: converged when ||E'(u) - nu u||_{H^{-s/2}} <= grad_tol_factor * sqrt(mu)
    double grad_tol_factor = 1e-9;
    double e_tol = 1e-12;  // relative energy stall threshold
    int max_iters = 20000;

    bool precondition = true;
    bool use_symmetrize = false;
    BSearchRange b_search;
    int pad_factor = 2;

    // continuation support
    std::optional<Field> initial_guess;  // resampled and rescaled before use
    std::optional<double> fixed_B;       // reuse a known ansatz scale, skip the B scan
};

struct SolveResult {
    Field u;  // recentered, Q(u) = mu
    double mu = 0.0;
    double nu = 0.0;           // multiplier in the solve frame
    double nu_original = 0.0;  // nu + accumulated symbol shift
    EnergyBreakdown breakdown;
    double residual = 0.0;     // H^{-s/2}
    double residual_l2 = 0.0;
    int iterations = 0;
    int polish_iterations = 0;
    bool converged = false;
    std::string stop_reason;

    // per accepted descent step: energy and constraint value (diagnostics)
    std::vector<double> energy_trace;
    std::vector<double> q_trace;

    double norm_hs2 = 0.0;
    double norm_h1s = 0.0;
    double norm_l2p = 0.0;
    double norm_linf = 0.0;

    double half_length = 0.0;
    int modes = 0;
    double b_star = 0.0;
    double t_star = 0.0;
    double tail = 0.0;
    bool tail_ok = false;
};

/// Long-wave trial profile sqrt(mu/t) phi(x/t) with band-limited phi >= 0 of
/// unit mass and t^(-s') = B mu^beta. Mass is normalized to mu exactly; the
/// sign is taken from the nonlinearity coefficient so that c * phi >= 0.
Field ansatz(double mu, const SymbolSpec& m, const NonlinearitySpec& n, double B,
             const Grid& grid);

/// Ansatz width t = (B mu^beta)^(-1/s').
double ansatz_width(double mu, const SymbolSpec& m, const NonlinearitySpec& n, double B);

struct BOptimum {
    double b = 0.0;
    double energy = 0.0;
    bool negative_energy = false;  // warning when false: no trial profile went below zero
};

/// Scan B over a log-spaced range (then golden-section refine) for the trial
/// profile of lowest energy on the given grid.
BOptimum optimize_B(double mu, const SymbolSpec& m, const NonlinearitySpec& n, const Grid& grid,
                    const BSearchRange& range, int pad_factor = 2);

/// Minimize E over {Q = mu} by preconditioned projected gradient descent with
/// Barzilai-Borwein steps, safeguarded by monotone backtracking.
SolveResult solve(const SolveConfig& cfg);

/// Solve for every mu in ascending `mu_list`, running from the largest down
/// and warm-starting each solve from the previous profile. With workers > 1
/// the solves run cold-started in parallel instead.
SweepReport continuation_sweep(const std::vector<double>& mu_list, const SolveConfig& cfg_template,
                               int workers = 1);

struct SweepRun {
    SweepReport report;
    std::vector<SolveResult> results;  // sorted ascending in mu
};

/// As continuation_sweep, but also keeps the full per-mu solve results.
SweepRun continuation_sweep_full(const std::vector<double>& mu_list,
                                 const SolveConfig& cfg_template, int workers = 1);

/// Assemble sweep entries from finished solves (entries sorted by mu).
SweepReport make_sweep_report(const std::vector<SolveResult>& results, const SolveConfig& cfg);

}  // namespace solwave
