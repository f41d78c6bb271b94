#include "solwave/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace solwave {
namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

double remainder_primitive(const RemainderSpec& rem, double x) {
    if (rem.primitive) return rem.primitive(x);
    const double tol = 1e-13 * std::max(1.0, std::abs(x));
    return integrate(rem.n, 0.0, x, tol);
}

double sampled_remainder_witness(const RemainderSpec& rem) {
    double sup = 0.0;
    for (int i = 0; i < 512; ++i) {
        const double x = std::exp(std::log(1e-6) * (1.0 - i / 511.0));
        sup = std::max(sup, std::abs(rem.n(x)) / std::pow(x, 1.0 + rem.r));
        sup = std::max(sup, std::abs(rem.n(-x)) / std::pow(x, 1.0 + rem.r));
    }
    return sup;
}

}  // namespace

double NonlinearitySpec::homogeneous(double x) const {
    const double a = std::abs(x);
    if (form == NonlinearityForm::A1) return c * std::pow(a, 1.0 + p);
    return c * x * std::pow(a, p);
}

double NonlinearitySpec::remainder_value(double x) const {
    return remainder ? remainder->n(x) : 0.0;
}

double NonlinearitySpec::operator()(double x) const {
    const double y = cutoff_applied ? std::clamp(x, -1.0, 1.0) : x;
    return homogeneous(y) + remainder_value(y);
}

NonlinearitySpec make_nonlinearity(NonlinearityForm form, double c, double p,
                                   std::optional<RemainderSpec> remainder) {
    if (!(p > 0.0)) throw ConfigError("nonlinearity exponent p must be positive, got " + std::to_string(p));
    if (c == 0.0) throw ConfigError("nonlinearity coefficient c must be nonzero");
    if (form == NonlinearityForm::A2 && c <= 0.0)
        throw ConfigError("form (A2) with c <= 0 is outside the solvable regime: the energy "
                          "cannot be pushed below zero by any profile");
    if (remainder && !(remainder->r > p))
        throw ConfigError("remainder exponent r = " + std::to_string(remainder->r) +
                          " must exceed p = " + std::to_string(p));

    NonlinearitySpec spec;
    spec.form = form;
    spec.c = c;
    spec.p = p;
    spec.remainder = std::move(remainder);
    if (spec.remainder) spec.remainder_witness = sampled_remainder_witness(*spec.remainder);
    return spec;
}

double primitive_N(const NonlinearitySpec& n, double x) {
    auto inner = [&n](double y) {
        double value;
        const double a = std::abs(y);
        if (n.form == NonlinearityForm::A1)
            value = n.c * y * std::pow(a, 1.0 + n.p) / (2.0 + n.p);
        else
            value = n.c * std::pow(a, 2.0 + n.p) / (2.0 + n.p);
        if (n.remainder) value += remainder_primitive(*n.remainder, y);
        return value;
    };
    if (!n.cutoff_applied || std::abs(x) <= 1.0) return inner(x);
    const double edge = x > 0.0 ? 1.0 : -1.0;
    return inner(edge) + n(edge) * (x - edge);
}

NonlinearitySpec cutoff_nonlinearity(const NonlinearitySpec& n) {
    NonlinearitySpec spec = n;
    spec.cutoff_applied = true;
    return spec;
}

double lipschitz_estimate(const NonlinearitySpec& n, int samples) {
    const double h = 1e-6;
    double sup = 0.0;
    for (int i = 0; i <= samples; ++i) {
        const double x = -1.0 + 2.0 * i / samples;
        sup = std::max(sup, std::abs(n(x + h) - n(x - h)) / (2.0 * h));
    }
    return sup;
}

RemainderSpec power_remainder(double coef, int k) {
    if (k < 2) throw ConfigError("power remainder exponent must be at least 2");
    RemainderSpec rem;
    rem.n = [coef, k](double x) { return coef * std::pow(x, k); };
    rem.r = k - 1.0;
    rem.primitive = [coef, k](double x) { return coef * std::pow(x, k + 1) / (k + 1); };
    rem.id = "power_" + std::to_string(k);
    return rem;
}

}  // namespace solwave
