#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "solwave/minimizer.hpp"
#include "solwave/sweep.hpp"

namespace solwave {

/// Least-squares slopes of log(-I_mu) and log(m0 - nu) against log mu over
/// the converged, tail-clean entries. Requires at least five usable entries
/// spanning at least one decade in mu.
FittedExponents fit_scaling(const SweepReport& report);

struct RatioRow {
    double mu = 0.0;
    double ldisp_ratio = 0.0;   // L / mu^(1+beta)
    double n_ratio = 0.0;       // N / mu^(1+beta)
    double lp_ratio = 0.0;      // ||u||_{2+p}^{2+p} / mu^(1+beta)
    double hs_ratio = 0.0;      // ||u||_{H^{s/2}}^2 / mu
};

struct RatioTable {
    std::vector<RatioRow> rows;
    double ldisp_spread = 0.0;  // max/min down each column
    double n_spread = 0.0;
    double lp_spread = 0.0;
    double hs_spread = 0.0;
    double stability_bound = 3.0;
    bool pass = false;
};

/// Near-minimizer size equivalences: each ratio must stay within a bounded
/// band (max/min below the stability bound) across the sweep.
RatioTable near_minimizer_ratios(const SweepReport& report, double ratio_stability = 3.0);

struct RemainderTrend {
    std::vector<std::pair<double, double>> ratios;  // (mu, |Nr| / mu^(1+beta))
    double spearman = 0.0;  // rank correlation of the ratio with mu
    double slope = 0.0;     // log-log slope vs mu; expected (r - p)/2
    bool decreasing_toward_zero = false;  // ratio shrinks as mu -> 0
    bool skipped = false;
    std::string note;
};

/// The remainder's share of the energy must vanish faster than mu^(1+beta).
RemainderTrend remainder_smallness(const SweepReport& report);

struct SubadditivityRow {
    double mu1 = 0.0, mu2 = 0.0;
    double i1 = 0.0, i2 = 0.0, i_sum = 0.0;  // I(mu1), I(mu2), I(mu1+mu2)
    double margin = 0.0;                     // I(mu1) + I(mu2) - I(mu1+mu2) > 0 required
};

struct SubadditivityTable {
    std::vector<SubadditivityRow> rows;
    int skipped = 0;
    bool all_strict = false;
};

/// Checks I(mu1+mu2) < I(mu1) + I(mu2) on the given pairs, interpolating
/// log(-I) against log(mu) by a monotone cubic through the sweep samples.
SubadditivityTable subadditivity_check(const SweepReport& report,
                                       const std::vector<std::pair<double, double>>& pairs);

/// Deterministic log-uniform pairs with both entries and their sum inside the
/// swept range.
std::vector<std::pair<double, double>> sample_subadditivity_pairs(const SweepReport& report,
                                                                  int count, std::uint64_t seed);

struct CongestionProfile {
    double max_value = 0.0;                       // max_j ||phi_j u||_{2+p}
    std::vector<std::pair<int, double>> profile;  // (cell j, windowed norm)
    double partition_error = 0.0;                 // max |sum_j phi_j(x) - 1| on the grid
};

/// Windowed L^{2+p} mass over the unit-cell partition of unity built from a
/// mollified characteristic function.
CongestionProfile congestion_profile(const Field& u, double p);

struct CommutatorOptions {
    Grid grid{512.0, 4096};
    std::uint64_t seed = 12345;
    int iterations = 40;
};

/// Operator-norm estimates of [L, phi(./r)] : H^{s/2} -> H^{-s/2} by power
/// iteration with random probes; one (r, estimate) per requested radius.
/// Available window profiles: "gaussian", "sech", "bump".
std::vector<std::pair<double, double>> commutator_decay(const SymbolSpec& m,
                                                        const std::string& profile,
                                                        const std::vector<double>& r_list,
                                                        int probes,
                                                        const CommutatorOptions& opts = {});

struct RegularityReport {
    double h1s_ratio = 0.0;          // ||u||_{H^{1+s}}^2 / mu
    double fixed_point_error = 0.0;  // ||(L - nu + 1)^{-1}(n(u) + u) - u||_2
    double residual = 0.0;
    bool lambda_invertible = false;
    bool ok = false;  // fixed-point error within 10x the profile residual
};

/// One explicit bootstrap step: a converged profile must reproduce itself
/// under u -> (L - nu + 1)^{-1} (n(u) + u).
RegularityReport regularity_report(const SolveResult& result, const SymbolSpec& m,
                                   const NonlinearitySpec& n, int pad_factor = 2);

}  // namespace solwave
