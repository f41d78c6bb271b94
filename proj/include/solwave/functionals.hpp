#pragma once

#include <utility>

#include "solwave/nonlinearity.hpp"
#include "solwave/spectral_ops.hpp"

namespace solwave {

/// All functional values of one field under one model.
struct EnergyBreakdown {
    double q = 0.0;      // mass Q = 1/2 int u^2
    double ldisp = 0.0;  // dispersive part 1/2 int m |u^|^2
    double np = 0.0;     // homogeneous nonlinear part int N_p(u)
    double nr = 0.0;     // remainder part int N_r(u)
    double e = 0.0;      // energy ldisp - (np + nr)
};

/// Q(u) = 1/2 int u^2 dx.
double eval_Q(const Field& u);

/// L(u) = 1/2 sum_k m(xi_k) |u^(xi_k)|^2 dxi = 1/2 <Lu, u>.
double eval_Ldisp(const Field& u, const SymbolSpec& m);
double eval_Ldisp(const Spectrum& u_hat, const std::vector<double>& symbol_values);

/// (int N_p(u) dx, int N_r(u) dx), evaluated on the padded grid.
std::pair<double, double> eval_N(const Field& u, const NonlinearitySpec& n, int pad_factor = 2);

EnergyBreakdown eval_E(const Field& u, const SymbolSpec& m, const NonlinearitySpec& n,
                       int pad_factor = 2);

/// Gradient of the energy: Lu - n(u), with the nonlinear part dealiased.
Field gradient_E(const Field& u, const SymbolSpec& m, const NonlinearitySpec& n,
                 int pad_factor = 2);

/// nu = <E'(u), u> / (2 mu); the wave speed of a constrained minimizer.
double lagrange_multiplier(const Field& u, double mu, const SymbolSpec& m,
                           const NonlinearitySpec& n, int pad_factor = 2);

/// Dual-norm residual || -nu u + Lu - n(u) ||_{H^{-s/2}} of the profile equation.
double el_residual(const Field& u, double nu, const SymbolSpec& m, const NonlinearitySpec& n,
                   int pad_factor = 2);

/// Plain L2 residual of the same equation, reported for diagnostics.
double el_residual_l2(const Field& u, double nu, const SymbolSpec& m, const NonlinearitySpec& n,
                      int pad_factor = 2);

}  // namespace solwave
