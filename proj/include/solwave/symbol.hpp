#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "solwave/errors.hpp"

namespace solwave {

/**
 * Evaluable dispersion symbol m(xi) with its growth orders: m(xi)-m(0) grows
 * like |xi|^s_prime below wavenumber one and like |xi|^s above it. Evaluation
 * must be even in xi; the factory functions guarantee this by evaluating in
 * |xi|.
 */
struct SymbolSpec {
    std::string id;
    std::function<double(double)> eval;
    double s = 0.0;        // high-frequency order, > 0
    double s_prime = 0.0;  // low-frequency order, > 0
    double m0 = 0.0;       // m(0)
    double shift = 0.0;    // amount subtracted from a base symbol, see shift_symbol()

    double operator()(double xi) const { return eval(xi); }
};

/// Capillary-gravity Whitham symbol ((1 + T xi^2) tanh(xi)/xi)^(1/2); s = 1/2, s' = 2.
/// Requires strong surface tension T >= 1/3 unless allow_weak_tension is set.
SymbolSpec whitham_symbol(double T, bool allow_weak_tension = false);

/// Fractional KdV symbol |xi|^alpha; s = s' = alpha. Requires alpha > 1/3:
/// at or below that growth rate the equation has no solitary waves.
SymbolSpec fkdv_symbol(double alpha);

/// Symbol from tabulated (xi, m(xi)) samples, xi >= 0 ascending starting at 0,
/// interpolated by a natural cubic spline and evaluated in |xi|.
SymbolSpec tabulated_symbol(std::string id, std::vector<std::pair<double, double>> table,
                            double s, double s_prime);

/// m(xi) - m(0), so the shifted symbol vanishes at zero. The shift amount is
/// recorded so wave speeds can be mapped back to the original model.
SymbolSpec shift_symbol(const SymbolSpec& m);

struct GrowthBandReport {
    double ratio_min = 0.0;
    double ratio_max = 0.0;
    bool ok = false;
    double witness_xi = 0.0;  // offending xi when !ok
    std::string note;
};

/// Result of sampling the two-sided growth bounds of a symbol.
struct GrowthReport {
    GrowthBandReport low;   // (m(xi)-m0)/|xi|^s' on the low band
    GrowthBandReport high;  // (m(xi)-m0)/|xi|^s  on the high band
    bool exponents_ok = true;
    std::string exponent_note;
    bool passed = false;
};

struct GrowthCheckOptions {
    double ratio_bound = 1e3;       // max/min of sampled ratios allowed per band
    double low_band_min = 1.0 / 32; // sampling of the low band starts here
};

/// Samples (m(xi)-m0)/|xi|^s' on log-spaced points below wavenumber one and
/// (m(xi)-m0)/|xi|^s on (1, xi_max]; passes when all ratios are finite,
/// positive and stable (max/min below ratio_bound).
GrowthReport check_assumption_B(const SymbolSpec& m, double xi_max, int samples,
                                const GrowthCheckOptions& opts = {});

/// As above, and additionally requires s' > p/2 and s > p/(2+p) for the
/// nonlinearity's homogeneity exponent p.
GrowthReport check_assumption_B(const SymbolSpec& m, double xi_max, int samples, double p,
                                const GrowthCheckOptions& opts = {});

struct ModulusReport {
    // (offset t, estimated sup_xi |m(xi)-m(xi-t)| / (<xi>^(s/2) <xi-t>^(s/2))).
    std::vector<std::pair<double, double>> points;
    bool vanishing = false;  // omega-hat decays toward zero with the offset
};

struct ModulusOptions {
    double xi_max = 100.0;
    int samples = 4096;
    double vanish_fraction = 0.25;
};

/// Empirical modulus of continuity of the symbol under the bracket weights.
ModulusReport modulus_estimate(const SymbolSpec& m, const std::vector<double>& offsets,
                               const ModulusOptions& opts = {});

}  // namespace solwave
