#pragma once

#include <functional>
#include <optional>
#include <string>

#include "solwave/errors.hpp"

namespace solwave {

/// Remainder part of a nonlinearity: n_r(x) = O(|x|^(1+r)) near zero, r > p.
/// When no closed-form primitive is registered, N_r is integrated numerically.
struct RemainderSpec {
    std::function<double(double)> n;
    double r = 0.0;
    std::function<double(double)> primitive;  // optional closed form of int_0^x n_r
    std::string id;
};

enum class NonlinearityForm { A1, A2 };

/**
 * Locally Lipschitz nonlinearity n = n_p + n_r with homogeneous part
 *   (A1)  n_p(x) = c |x|^(1+p),  c != 0
 *   (A2)  n_p(x) = c x |x|^p,    c > 0
 * and optional remainder. With the cutoff applied, evaluation is frozen
 * outside [-1, 1] (n(x) = n(sign(x)) there), which makes n globally Lipschitz
 * without changing it near zero.
 */
struct NonlinearitySpec {
    NonlinearityForm form = NonlinearityForm::A1;
    double c = 0.0;
    double p = 0.0;
    std::optional<RemainderSpec> remainder;
    bool cutoff_applied = false;
    double remainder_witness = 0.0;  // sampled sup of |n_r(x)| / |x|^(1+r) on (0, 1]

    bool has_remainder() const { return remainder.has_value(); }

    double homogeneous(double x) const;
    double remainder_value(double x) const;
    /// n(x), honoring the cutoff when applied.
    double operator()(double x) const;
};

NonlinearitySpec make_nonlinearity(NonlinearityForm form, double c, double p,
                                   std::optional<RemainderSpec> remainder = std::nullopt);

/// N(x) = int_0^x n(t) dt for the full nonlinearity (cutoff-aware: past the
/// cutoff the primitive continues linearly with the frozen slope).
double primitive_N(const NonlinearitySpec& n, double x);

/// Freeze n outside [-1, 1]. Idempotent.
NonlinearitySpec cutoff_nonlinearity(const NonlinearitySpec& n);

/// Sampled sup of |n'| on [-1, 1] by central differences; a Lipschitz bound
/// for the cutoff nonlinearity.
double lipschitz_estimate(const NonlinearitySpec& n, int samples = 4096);

/// Remainder n_r(x) = coef * x^k with exponent r = k - 1 and closed-form primitive.
RemainderSpec power_remainder(double coef, int k);

}  // namespace solwave
