#pragma once

#include <vector>

#include "solwave/functionals.hpp"

namespace solwave {

struct Trajectory {
    std::vector<double> times;    // strictly increasing, starting at 0
    std::vector<Field> snapshots; // one per time
    std::vector<double> q_values; // mass at each snapshot
    double dt_nominal = 0.0;
    double q_drift = 0.0;  // max relative drift of the mass
    std::string scheme = "etdrk4";
};

struct EvolveOptions {
    int pad_factor = 2;
    double blowup_factor = 10.0;  // abort when max|u| exceeds this times its initial value
};

/// Fourth-order exponential time differencing for u_t + (Lu - n(u))_x = 0 on
/// the periodic box: the linear phase exp(-i xi m(xi) t) is integrated
/// exactly, the nonlinear flux through the standard four-stage scheme.
/// Throws NumericalError with the blow-up time when the solution explodes.
Trajectory integrate(const Field& u0, const SymbolSpec& m, const NonlinearitySpec& n,
                     double t_end, double dt, std::vector<double> output_times = {},
                     const EvolveOptions& opts = {});

/// Conservative step-size heuristic 0.5 / max_k |xi_k m(xi_k)|.
double suggested_dt(const Grid& grid, const SymbolSpec& m);

struct TravelingWaveError {
    double shape_error = 0.0;     // max over snapshots of relative L2 distance after recentering
    double measured_speed = 0.0;  // linear fit of the unwrapped peak position
    bool tracking_ok = true;      // false when peak tracking was ambiguous
};

/// How well the trajectory matches rigid translation at speed nu. Needs at
/// least 3 snapshots; per-snapshot travel must stay below half a box.
TravelingWaveError traveling_wave_error(const Trajectory& traj, double nu);

}  // namespace solwave
