#pragma once

#include <complex>
#include <memory>
#include <utility>
#include <vector>

#include "solwave/grid.hpp"

namespace solwave {

class Spectrum;

/**
 * Real-valued samples on a periodic grid. Value type; operations return new
 * fields. A field constructed from a Spectrum keeps that spectrum attached so
 * repeated transforms of solver iterates are free.
 */
class Field {
  public:
    Field(Grid grid, std::vector<double> values) : grid_(std::move(grid)), values_(std::move(values)) {
        if (static_cast<int>(values_.size()) != grid_.size())
            throw ConfigError("field sample count does not match grid size");
    }
    explicit Field(Grid grid) : grid_(std::move(grid)), values_(grid_.size(), 0.0) {}

    Field(Grid grid, std::vector<double> values, std::shared_ptr<const Spectrum> cached)
        : grid_(std::move(grid)), values_(std::move(values)), cached_spectrum_(std::move(cached)) {}

    const Grid& grid() const { return grid_; }
    int size() const { return grid_.size(); }
    const std::vector<double>& values() const { return values_; }
    double operator[](int j) const { return values_[j]; }

    /// Spectrum attached at construction time, if any (null otherwise).
    const std::shared_ptr<const Spectrum>& cached_spectrum() const { return cached_spectrum_; }

  private:
    Grid grid_;
    std::vector<double> values_;
    std::shared_ptr<const Spectrum> cached_spectrum_;
};

/**
 * Discrete Fourier coefficients stored in ascending wavenumber order,
 * coefficient i belonging to xi = pi*(i - M/2)/l. The normalization
 * approximates the unitary Fourier transform on the line: with the spectral
 * quadrature weight dxi = pi/l,
 *
 *     sum_k |c_k|^2 dxi  ==  sum_j f(x_j)^2 h        (discrete Parseval).
 */
class Spectrum {
  public:
    Spectrum(Grid grid, std::vector<std::complex<double>> coeffs)
        : grid_(std::move(grid)), coeffs_(std::move(coeffs)) {
        if (static_cast<int>(coeffs_.size()) != grid_.size())
            throw ConfigError("spectrum coefficient count does not match grid size");
    }
    explicit Spectrum(Grid grid) : grid_(std::move(grid)), coeffs_(grid_.size(), 0.0) {}

    const Grid& grid() const { return grid_; }
    int size() const { return grid_.size(); }
    const std::vector<std::complex<double>>& coeffs() const { return coeffs_; }
    std::vector<std::complex<double>>& coeffs() { return coeffs_; }

    /// Coefficient for integer wavenumber index k in [-M/2, M/2-1].
    std::complex<double> at(int k) const { return coeffs_[k + grid_.size() / 2]; }
    std::complex<double>& at(int k) { return coeffs_[k + grid_.size() / 2]; }

  private:
    Grid grid_;
    std::vector<std::complex<double>> coeffs_;
};

/// Forward transform. Returns the attached spectrum when the field carries one.
Spectrum transform(const Field& f);

/// Inverse transform; the result keeps a copy of the input spectrum attached.
Field inverse_transform(const Spectrum& s);

}  // namespace solwave
