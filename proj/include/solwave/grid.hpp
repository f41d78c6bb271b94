#pragma once

#include <cmath>
#include <vector>

#include "solwave/errors.hpp"

namespace solwave {

/**
 * Uniform periodic grid on [-l, l) with M nodes and the matching set of
 * discrete wavenumbers xi_k = pi*k/l, k = -M/2 .. M/2-1.
 *
 * Quadrature is the periodic trapezoid rule: node weight h = 2l/M, so the
 * weights sum to the box length 2l. Wavenumber sums carry the weight
 * dxi = pi/l, which makes the discrete Parseval identity exact.
 */
class Grid {
  public:
    Grid(double half_length, int modes) : half_length_(half_length), modes_(modes) {
        if (!(half_length > 0.0))
            throw ConfigError("grid half-length must be positive, got " +
                              std::to_string(half_length));
        if (modes < 8) throw ConfigError("grid needs at least 8 modes, got " + std::to_string(modes));
        if (modes % 2 != 0) throw ConfigError("grid mode count must be even, got " + std::to_string(modes));
    }

    double half_length() const { return half_length_; }
    int size() const { return modes_; }

    /// Node spacing h = 2l/M.
    double spacing() const { return 2.0 * half_length_ / modes_; }
    /// Wavenumber spacing dxi = pi/l (also the spectral quadrature weight).
    double xi_weight() const { return M_PI / half_length_; }

    /// j-th node, j = 0..M-1.
    double node(int j) const { return -half_length_ + spacing() * j; }
    /// Wavenumber for integer index k in [-M/2, M/2-1].
    double wavenumber(int k) const { return M_PI * k / half_length_; }
    /// Wavenumber for storage index i in [0, M-1] (ascending, k = i - M/2).
    double wavenumber_at(int i) const { return wavenumber(i - modes_ / 2); }

    std::vector<double> nodes() const {
        std::vector<double> x(modes_);
        for (int j = 0; j < modes_; ++j) x[j] = node(j);
        return x;
    }
    std::vector<double> wavenumbers() const {
        std::vector<double> xi(modes_);
        for (int i = 0; i < modes_; ++i) xi[i] = wavenumber_at(i);
        return xi;
    }

    friend bool operator==(const Grid& a, const Grid& b) {
        return a.half_length_ == b.half_length_ && a.modes_ == b.modes_;
    }
    friend bool operator!=(const Grid& a, const Grid& b) { return !(a == b); }

  private:
    double half_length_;
    int modes_;
};

inline Grid make_grid(double half_length, int modes) { return Grid(half_length, modes); }

}  // namespace solwave
