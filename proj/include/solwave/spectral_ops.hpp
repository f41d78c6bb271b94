#pragma once

#include <functional>
#include <vector>

#include "solwave/field.hpp"
#include "solwave/symbol.hpp"

namespace solwave {

/// Symbol values at every grid wavenumber (storage order). Throws
/// NumericalError naming the offending xi if any value is non-finite.
std::vector<double> evaluate_symbol_on_grid(const SymbolSpec& m, const Grid& grid);

/// Apply the Fourier multiplier with the given per-mode values.
Field apply_multiplier(const std::vector<double>& symbol_values, const Field& f);
Spectrum apply_multiplier(const std::vector<double>& symbol_values, const Spectrum& s);

/// Apply the Fourier multiplier L with symbol m: (Lf)^(xi) = m(xi) f^(xi).
Field apply_multiplier(const SymbolSpec& m, const Field& f);

/// Sobolev norm (sum_k <xi_k>^(2 alpha) |f^(xi_k)|^2 dxi)^(1/2); alpha = 0 is L2.
double sobolev_norm(const Field& f, double alpha);
double sobolev_norm(const Spectrum& s, double alpha);

/// Lebesgue norm (sum_j |f(x_j)|^q h)^(1/q), q >= 1.
double lp_norm(const Field& f, double q);

/// Discrete L2 inner product sum_j f_j g_j h.
double inner_product(const Field& f, const Field& g);

/// Integral sum_j f_j h.
double quadrature(const Field& f);

/// Maximum of |f|.
double max_norm(const Field& f);

/// Location of the maximizer of |f|, refined to sub-grid accuracy by a
/// three-point quadratic fit through f^2 at the peak.
double peak_location(const Field& f);

/// Circular shift: output(x) = input(x + delta), applied spectrally (exact for
/// band-limited fields). The Nyquist mode is dropped to keep the result real.
Field shift_field(const Field& f, double delta);

/// Shift f so the maximizer of |f| sits at x = 0.
Field recenter(const Field& f);

/// Embed the spectrum on a grid with `factor` times as many modes (same box).
/// The unpaired Nyquist coefficient is split evenly between +/- slots.
Spectrum pad_spectrum(const Spectrum& s, int factor);

/// Restrict a spectrum to a coarser grid over the same box; the target's
/// Nyquist slot is zeroed.
Spectrum truncate_spectrum(const Spectrum& s, const Grid& target);

/// Evaluate the band-limited periodic interpolant of f on another grid.
Field resample(const Field& f, const Grid& target);

/// f scaled so that its mass Q = 1/2 ||f||_2^2 equals mu exactly.
Field rescale_mass(const Field& f, double mu);

/// Apply fn pointwise on a zero-padded grid and restrict back; suppresses
/// aliasing of polynomial nonlinearities up to cubic at pad factor 2.
Field dealiased_pointwise(const Field& f, const std::function<double(double)>& fn, int pad_factor);

/// Integral of fn(f(x)) dx evaluated on the padded grid.
double dealiased_integral(const Field& f, const std::function<double(double)>& fn, int pad_factor);

/// Share of the mass Q living in |x| >= fraction * l; the a posteriori check
/// that the periodic box was large enough.
double tail_mass(const Field& f, double fraction = 0.75);

/// Average of f and its reflection about x = 0.
Field symmetrize(const Field& f);

}  // namespace solwave
