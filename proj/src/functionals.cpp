#include "solwave/functionals.hpp"

#include "solwave/summation.hpp"

#include <cmath>

namespace solwave {
namespace {

// Primitive of the homogeneous part alone, honoring the cutoff plateau.
double primitive_Np(const NonlinearitySpec& n, double x) {
    auto inner = [&n](double y) {
        const double a = std::abs(y);
        if (n.form == NonlinearityForm::A1) return n.c * y * std::pow(a, 1.0 + n.p) / (2.0 + n.p);
        return n.c * std::pow(a, 2.0 + n.p) / (2.0 + n.p);
    };
    if (!n.cutoff_applied || std::abs(x) <= 1.0) return inner(x);
    const double edge = x > 0.0 ? 1.0 : -1.0;
    return inner(edge) + n.homogeneous(edge) * (x - edge);
}

}  // namespace

double eval_Q(const Field& u) {
    KahanSum sum;
    for (double v : u.values()) sum.add(v * v);
    return 0.5 * sum.value() * u.grid().spacing();
}

double eval_Ldisp(const Spectrum& u_hat, const std::vector<double>& symbol_values) {
    KahanSum sum;
    for (int i = 0; i < u_hat.size(); ++i) sum.add(symbol_values[i] * std::norm(u_hat.coeffs()[i]));
    return 0.5 * sum.value() * u_hat.grid().xi_weight();
}

double eval_Ldisp(const Field& u, const SymbolSpec& m) {
    return eval_Ldisp(transform(u), evaluate_symbol_on_grid(m, u.grid()));
}

std::pair<double, double> eval_N(const Field& u, const NonlinearitySpec& n, int pad_factor) {
    const Field fine = inverse_transform(pad_spectrum(transform(u), pad_factor));
    KahanSum sum_p, sum_r;
    for (double v : fine.values()) {
        const double np = primitive_Np(n, v);
        sum_p.add(np);
        sum_r.add(primitive_N(n, v) - np);
    }
    const double h = fine.grid().spacing();
    return {sum_p.value() * h, sum_r.value() * h};
}

EnergyBreakdown eval_E(const Field& u, const SymbolSpec& m, const NonlinearitySpec& n,
                       int pad_factor) {
    EnergyBreakdown b;
    b.q = eval_Q(u);
    b.ldisp = eval_Ldisp(u, m);
    std::tie(b.np, b.nr) = eval_N(u, n, pad_factor);
    b.e = b.ldisp - (b.np + b.nr);
    return b;
}

Field gradient_E(const Field& u, const SymbolSpec& m, const NonlinearitySpec& n, int pad_factor) {
    const Field lu = apply_multiplier(m, u);
    const Field nu = dealiased_pointwise(u, [&n](double x) { return n(x); }, pad_factor);
    std::vector<double> values(u.size());
    for (int j = 0; j < u.size(); ++j) values[j] = lu[j] - nu[j];
    return Field(u.grid(), std::move(values));
}

double lagrange_multiplier(const Field& u, double mu, const SymbolSpec& m,
                           const NonlinearitySpec& n, int pad_factor) {
    if (!(mu > 0.0)) throw ConfigError("lagrange multiplier needs mu > 0");
    return inner_product(gradient_E(u, m, n, pad_factor), u) / (2.0 * mu);
}

namespace {

Field el_residual_field(const Field& u, double nu, const SymbolSpec& m,
                        const NonlinearitySpec& n, int pad_factor) {
    const Field grad = gradient_E(u, m, n, pad_factor);
    std::vector<double> values(u.size());
    for (int j = 0; j < u.size(); ++j) values[j] = grad[j] - nu * u[j];
    return Field(u.grid(), std::move(values));
}

}  // namespace

double el_residual(const Field& u, double nu, const SymbolSpec& m, const NonlinearitySpec& n,
                   int pad_factor) {
    return sobolev_norm(el_residual_field(u, nu, m, n, pad_factor), -0.5 * m.s);
}

double el_residual_l2(const Field& u, double nu, const SymbolSpec& m, const NonlinearitySpec& n,
                      int pad_factor) {
    return lp_norm(el_residual_field(u, nu, m, n, pad_factor), 2.0);
}

}  // namespace solwave
