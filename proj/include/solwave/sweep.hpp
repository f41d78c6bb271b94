#pragma once

#include <string>
#include <vector>

namespace solwave {

/// Per-mu summary of one converged (or failed) solve, in frame-invariant form:
/// `energy` has the symbol's zero-frequency contribution m(0)*mu removed, and
/// `speed_defect` is m(0) - nu, both unchanged by shifting the symbol.
struct SweepEntry {
    double mu = 0.0;
    double energy = 0.0;        // I_mu for the zero-shifted model (= E - m_solve(0) mu)
    double nu = 0.0;            // wave speed in the original model frame
    double speed_defect = 0.0;  // m(0) - nu
    double q = 0.0;
    double ldisp = 0.0;  // dispersive energy for the zero-shifted model
    double np = 0.0;
    double nr = 0.0;
    double norm_hs2 = 0.0;   // H^{s/2}
    double norm_h1s = 0.0;   // H^{1+s}
    double norm_l2p = 0.0;   // L^{2+p}
    double norm_linf = 0.0;
    double residual = 0.0;   // H^{-s/2} profile-equation residual
    double tail = 0.0;       // mass fraction in the outer quarter of the box
    int iterations = 0;
    bool converged = false;
    bool tail_ok = false;
    std::string note;
};

struct FittedExponents {
    double energy_slope = 0.0;  // expected 1 + beta
    double kappa = 0.0;         // -I_mu ~ kappa mu^(1+beta)
    double r2_energy = 0.0;
    double speed_slope = 0.0;   // expected beta
    double r2_speed = 0.0;
    int entries_used = 0;
};

struct SweepReport {
    std::vector<SweepEntry> entries;  // sorted ascending in mu
    FittedExponents fitted;
    // I_mu must decrease strictly in mu; a violation between converged
    // entries suggests the continuation jumped to another solution branch
    bool branch_change_warning = false;
    // model metadata
    double s = 0.0;
    double s_prime = 0.0;
    double p = 0.0;
    double r = 0.0;  // 0 when the model has no remainder
    double m0 = 0.0;
    double beta = 0.0;  // theoretical s'p/(2s'-p)
    std::string symbol_id;
};

inline double theoretical_beta(double s_prime, double p) {
    return s_prime * p / (2.0 * s_prime - p);
}

}  // namespace solwave
