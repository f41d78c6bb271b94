#include "solwave/spectral_ops.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

namespace solwave {

std::vector<double> evaluate_symbol_on_grid(const SymbolSpec& m, const Grid& grid) {
    std::vector<double> values(grid.size());
    for (int i = 0; i < grid.size(); ++i) {
        const double xi = grid.wavenumber_at(i);
        values[i] = m.eval(xi);
        if (!std::isfinite(values[i])) {
            std::ostringstream msg;
            msg << "symbol '" << m.id << "' evaluates to a non-finite value at xi = " << xi;
            throw NumericalError(msg.str());
        }
    }
    return values;
}

Spectrum apply_multiplier(const std::vector<double>& symbol_values, const Spectrum& s) {
    Spectrum out(s.grid());
    for (int i = 0; i < s.size(); ++i) out.coeffs()[i] = symbol_values[i] * s.coeffs()[i];
    return out;
}

Field apply_multiplier(const std::vector<double>& symbol_values, const Field& f) {
    return inverse_transform(apply_multiplier(symbol_values, transform(f)));
}

Field apply_multiplier(const SymbolSpec& m, const Field& f) {
    return apply_multiplier(evaluate_symbol_on_grid(m, f.grid()), f);
}

double sobolev_norm(const Spectrum& s, double alpha) {
    const Grid& g = s.grid();
    double sum = 0.0;
    for (int i = 0; i < s.size(); ++i) {
        const double xi = g.wavenumber_at(i);
        sum += std::pow(1.0 + xi * xi, alpha) * std::norm(s.coeffs()[i]);
    }
    return std::sqrt(sum * g.xi_weight());
}

double sobolev_norm(const Field& f, double alpha) { return sobolev_norm(transform(f), alpha); }

double lp_norm(const Field& f, double q) {
    if (!(q >= 1.0)) throw ConfigError("lp_norm exponent must be >= 1, got " + std::to_string(q));
    double sum = 0.0;
    for (double v : f.values()) sum += std::pow(std::abs(v), q);
    return std::pow(sum * f.grid().spacing(), 1.0 / q);
}

double inner_product(const Field& f, const Field& g) {
    double sum = 0.0;
    for (int j = 0; j < f.size(); ++j) sum += f[j] * g[j];
    return sum * f.grid().spacing();
}

double quadrature(const Field& f) {
    double sum = 0.0;
    for (double v : f.values()) sum += v;
    return sum * f.grid().spacing();
}

double max_norm(const Field& f) {
    double sup = 0.0;
    for (double v : f.values()) sup = std::max(sup, std::abs(v));
    return sup;
}

double peak_location(const Field& f) {
    const int m = f.size();
    int jmax = 0;
    double best = -1.0;
    for (int j = 0; j < m; ++j) {
        const double v = f[j] * f[j];
        if (v > best) {
            best = v;
            jmax = j;
        }
    }
    if (best == 0.0) return 0.0;
    const double gl = f[(jmax + m - 1) % m] * f[(jmax + m - 1) % m];
    const double gr = f[(jmax + 1) % m] * f[(jmax + 1) % m];
    const double denom = gl - 2.0 * best + gr;
    double frac = 0.0;
    if (denom < 0.0) frac = std::clamp(0.5 * (gl - gr) / denom, -0.5, 0.5);
    return f.grid().node(jmax) + frac * f.grid().spacing();
}

Field shift_field(const Field& f, double delta) {
    Spectrum s = transform(f);
    const Grid& g = s.grid();
    for (int i = 0; i < s.size(); ++i) {
        const double xi = g.wavenumber_at(i);
        s.coeffs()[i] *= std::exp(std::complex<double>(0.0, xi * delta));
    }
    s.coeffs()[0] = 0.0;  // unpaired Nyquist mode cannot be rotated and stay real
    return inverse_transform(s);
}

Field recenter(const Field& f) {
    // The three-point fit has an O(h^2) bias at a generic sub-grid offset but
    // is unbiased for a peak sitting on a node, so iterating converges fast.
    Field out = f;
    const double tol = 1e-9 * f.grid().spacing();
    for (int pass = 0; pass < 6; ++pass) {
        const double x0 = peak_location(out);
        if (std::abs(x0) <= tol) break;
        out = shift_field(out, x0);
    }
    return out;
}

Spectrum pad_spectrum(const Spectrum& s, int factor) {
    if (factor < 1) throw ConfigError("pad factor must be >= 1");
    if (factor == 1) return s;
    const Grid& g = s.grid();
    const int m = g.size();
    Grid fine(g.half_length(), m * factor);
    Spectrum out(fine);
    const int offset = fine.size() / 2 - m / 2;
    for (int i = 1; i < m; ++i) out.coeffs()[offset + i] = s.coeffs()[i];
    const std::complex<double> nyq = 0.5 * s.coeffs()[0];
    out.coeffs()[offset] = nyq;
    out.coeffs()[offset + m] = std::conj(nyq);
    return out;
}

Spectrum truncate_spectrum(const Spectrum& s, const Grid& target) {
    if (target.half_length() != s.grid().half_length())
        throw ConfigError("spectrum truncation requires matching boxes");
    const int m = target.size();
    Spectrum out(target);
    const int offset = s.size() / 2 - m / 2;
    for (int i = 1; i < m; ++i) out.coeffs()[i] = s.coeffs()[offset + i];
    out.coeffs()[0] = 0.0;
    return out;
}

Field resample(const Field& f, const Grid& target) {
    if (target == f.grid()) return f;
    const Spectrum s = transform(f);
    const Grid& g = s.grid();
    const double scale = std::sqrt(2.0 * M_PI) / (2.0 * g.half_length());
    std::vector<double> values(target.size(), 0.0);
    for (int j = 0; j < target.size(); ++j) {
        const double x = target.node(j);
        std::complex<double> acc = 0.0;
        for (int i = 0; i < s.size(); ++i) {
            const double xi = g.wavenumber_at(i);
            acc += s.coeffs()[i] * std::exp(std::complex<double>(0.0, xi * x));
        }
        values[j] = scale * acc.real();
    }
    return Field(target, std::move(values));
}

Field rescale_mass(const Field& f, double mu) {
    const double q = 0.5 * inner_product(f, f);
    if (!(q > 0.0)) throw NumericalError("cannot rescale a zero field to positive mass");
    const double factor = std::sqrt(mu / q);
    std::vector<double> values(f.size());
    for (int j = 0; j < f.size(); ++j) values[j] = factor * f[j];
    if (f.cached_spectrum()) {
        auto s = std::make_shared<Spectrum>(*f.cached_spectrum());
        for (auto& c : s->coeffs()) c *= factor;
        return Field(f.grid(), std::move(values), std::move(s));
    }
    return Field(f.grid(), std::move(values));
}

Field dealiased_pointwise(const Field& f, const std::function<double(double)>& fn, int pad_factor) {
    const Field fine = inverse_transform(pad_spectrum(transform(f), pad_factor));
    std::vector<double> values(fine.size());
    for (int j = 0; j < fine.size(); ++j) values[j] = fn(fine[j]);
    const Spectrum result = transform(Field(fine.grid(), std::move(values)));
    return inverse_transform(truncate_spectrum(result, f.grid()));
}

double dealiased_integral(const Field& f, const std::function<double(double)>& fn, int pad_factor) {
    const Field fine = inverse_transform(pad_spectrum(transform(f), pad_factor));
    double sum = 0.0;
    for (double v : fine.values()) sum += fn(v);
    return sum * fine.grid().spacing();
}

double tail_mass(const Field& f, double fraction) {
    const Grid& g = f.grid();
    const double cut = fraction * g.half_length();
    double sum = 0.0;
    for (int j = 0; j < f.size(); ++j)
        if (std::abs(g.node(j)) >= cut) sum += f[j] * f[j];
    return 0.5 * sum * g.spacing();
}

Field symmetrize(const Field& f) {
    const int m = f.size();
    std::vector<double> values(m);
    for (int j = 0; j < m; ++j) values[j] = 0.5 * (f[j] + f[(m - j) % m]);
    return Field(f.grid(), std::move(values));
}

}  // namespace solwave
