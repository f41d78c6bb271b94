#include "solwave/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

namespace solwave {
namespace {

// tanh(x)/x with the series limit at zero.
double tanhc(double x) {
    const double a = std::abs(x);
    if (a < 1e-4) {
        const double a2 = a * a;
        return 1.0 - a2 / 3.0 + 2.0 * a2 * a2 / 15.0;
    }
    return std::tanh(a) / a;
}

std::vector<double> log_spaced(double lo, double hi, int n) {
    std::vector<double> out(n);
    const double la = std::log(lo), lb = std::log(hi);
    for (int i = 0; i < n; ++i) out[i] = std::exp(la + (lb - la) * i / (n - 1));
    return out;
}

GrowthBandReport sample_band(const SymbolSpec& m, const std::vector<double>& xis, double order,
                             double ratio_bound) {
    GrowthBandReport band;
    band.ratio_min = std::numeric_limits<double>::infinity();
    band.ratio_max = 0.0;
    for (double xi : xis) {
        const double value = m.eval(xi) - m.m0;
        const double ratio = value / std::pow(std::abs(xi), order);
        if (!std::isfinite(ratio)) {
            band.ok = false;
            band.witness_xi = xi;
            band.note = "non-finite growth ratio";
            return band;
        }
        if (ratio <= 0.0) {
            band.ok = false;
            band.witness_xi = xi;
            band.note = "growth ratio not positive";
            return band;
        }
        if (ratio < band.ratio_min) band.ratio_min = ratio;
        if (ratio > band.ratio_max) {
            band.ratio_max = ratio;
            band.witness_xi = xi;
        }
    }
    band.ok = band.ratio_max / band.ratio_min < ratio_bound;
    if (!band.ok) band.note = "growth ratio spread exceeds bound";
    return band;
}

// Natural cubic spline through strictly increasing abscissae.
class CubicSpline {
  public:
    CubicSpline(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
        const int n = static_cast<int>(x_.size());
        m_.assign(n, 0.0);
        if (n < 3) return;
        std::vector<double> a(n, 0.0), b(n, 0.0), c(n, 0.0), d(n, 0.0);
        b[0] = b[n - 1] = 1.0;
        for (int i = 1; i + 1 < n; ++i) {
            const double hl = x_[i] - x_[i - 1], hr = x_[i + 1] - x_[i];
            a[i] = hl;
            b[i] = 2.0 * (hl + hr);
            c[i] = hr;
            d[i] = 6.0 * ((y_[i + 1] - y_[i]) / hr - (y_[i] - y_[i - 1]) / hl);
        }
        for (int i = 1; i < n; ++i) {
            const double w = a[i] / b[i - 1];
            b[i] -= w * c[i - 1];
            d[i] -= w * d[i - 1];
        }
        m_[n - 1] = d[n - 1] / b[n - 1];
        for (int i = n - 2; i >= 0; --i) m_[i] = (d[i] - c[i] * m_[i + 1]) / b[i];
    }

    double operator()(double x) const {
        if (x < x_.front() || x > x_.back()) return std::numeric_limits<double>::quiet_NaN();
        auto it = std::upper_bound(x_.begin(), x_.end(), x);
        int i = static_cast<int>(it - x_.begin());
        i = std::clamp(i, 1, static_cast<int>(x_.size()) - 1);
        const double h = x_[i] - x_[i - 1];
        const double t = (x - x_[i - 1]) / h;
        const double u = 1.0 - t;
        return u * y_[i - 1] + t * y_[i] +
               h * h / 6.0 * (u * (u * u - 1.0) * m_[i - 1] + t * (t * t - 1.0) * m_[i]);
    }

  private:
    std::vector<double> x_, y_, m_;
};

}  // namespace

SymbolSpec whitham_symbol(double T, bool allow_weak_tension) {
    if (!(T >= 1.0 / 3.0) && !allow_weak_tension)
        throw ConfigError("whitham symbol requires surface tension T >= 1/3 (got T = " +
                          std::to_string(T) + "); pass the weak-tension override to proceed");
    SymbolSpec spec;
    spec.id = "whitham";
    spec.eval = [T](double xi) {
        const double a = std::abs(xi);
        return std::sqrt((1.0 + T * a * a) * tanhc(a));
    };
    spec.s = 0.5;
    spec.s_prime = 2.0;
    spec.m0 = 1.0;
    return spec;
}

SymbolSpec fkdv_symbol(double alpha) {
    if (!(alpha > 1.0 / 3.0))
        throw ConfigError("fkdv symbol exponent must exceed 1/3 (got " + std::to_string(alpha) +
                          "); at or below that growth there are no solitary waves");
    SymbolSpec spec;
    spec.id = "fkdv";
    spec.eval = [alpha](double xi) { return std::pow(std::abs(xi), alpha); };
    spec.s = alpha;
    spec.s_prime = alpha;
    spec.m0 = 0.0;
    return spec;
}

SymbolSpec tabulated_symbol(std::string id, std::vector<std::pair<double, double>> table,
                            double s, double s_prime) {
    if (table.size() < 4) throw ConfigError("tabulated symbol needs at least 4 samples");
    std::sort(table.begin(), table.end());
    if (table.front().first != 0.0)
        throw ConfigError("tabulated symbol must include xi = 0 so m(0) is defined");
    std::vector<double> xs, ys;
    xs.reserve(table.size());
    ys.reserve(table.size());
    for (auto& [x, y] : table) {
        if (!xs.empty() && x <= xs.back()) throw ConfigError("tabulated symbol abscissae must be distinct");
        xs.push_back(x);
        ys.push_back(y);
    }
    auto spline = std::make_shared<CubicSpline>(std::move(xs), std::move(ys));
    SymbolSpec spec;
    spec.id = std::move(id);
    spec.eval = [spline](double xi) { return (*spline)(std::abs(xi)); };
    spec.s = s;
    spec.s_prime = s_prime;
    spec.m0 = table.front().second;
    return spec;
}

SymbolSpec shift_symbol(const SymbolSpec& m) {
    SymbolSpec spec = m;
    if (m.m0 == 0.0) return spec;
    const auto base = m.eval;
    const double m0 = m.m0;
    spec.eval = [base, m0](double xi) { return base(xi) - m0; };
    spec.id = m.id + "_shifted";
    spec.m0 = 0.0;
    spec.shift = m.shift + m0;
    return spec;
}

GrowthReport check_assumption_B(const SymbolSpec& m, double xi_max, int samples,
                                const GrowthCheckOptions& opts) {
    if (!(xi_max > 1.0)) throw ConfigError("assumption check needs xi_max > 1");
    if (samples < 100) throw ConfigError("assumption check needs at least 100 samples per band");

    GrowthReport report;
    report.low = sample_band(m, log_spaced(opts.low_band_min, 1.0 - 1e-9, samples), m.s_prime,
                             opts.ratio_bound);
    report.high = sample_band(m, log_spaced(1.0 + 1e-9, xi_max, samples), m.s, opts.ratio_bound);
    report.passed = report.low.ok && report.high.ok;
    return report;
}

GrowthReport check_assumption_B(const SymbolSpec& m, double xi_max, int samples, double p,
                                const GrowthCheckOptions& opts) {
    GrowthReport report = check_assumption_B(m, xi_max, samples, opts);
    std::ostringstream note;
    if (!(m.s_prime > p / 2.0)) {
        report.exponents_ok = false;
        note << "s' = " << m.s_prime << " must exceed p/2 = " << p / 2.0 << "; ";
    }
    if (!(m.s > p / (2.0 + p))) {
        report.exponents_ok = false;
        note << "s = " << m.s << " must exceed p/(2+p) = " << p / (2.0 + p) << "; ";
    }
    report.exponent_note = note.str();
    report.passed = report.passed && report.exponents_ok;
    return report;
}

ModulusReport modulus_estimate(const SymbolSpec& m, const std::vector<double>& offsets,
                               const ModulusOptions& opts) {
    ModulusReport report;
    for (double t : offsets) {
        if (t == 0.0) {
            report.points.emplace_back(0.0, 0.0);
            continue;
        }
        // sample densely enough that some pair (xi, xi - t) straddles any
        // feature of width |t|, capping the work per offset
        const double span = 2.0 * opts.xi_max;
        int n = opts.samples;
        if (span / n > 0.5 * std::abs(t))
            n = static_cast<int>(std::min(2e6, std::ceil(span / (0.5 * std::abs(t)))));
        double sup = 0.0;
        for (int i = 0; i < n; ++i) {
            const double xi = -opts.xi_max + span * i / (n - 1);
            const double eta = xi - t;
            if (eta < -opts.xi_max || eta > opts.xi_max) continue;
            const double ratio = std::abs(m.eval(xi) - m.eval(eta)) /
                                 (std::pow(1.0 + xi * xi, m.s / 4.0) *
                                  std::pow(1.0 + eta * eta, m.s / 4.0));
            sup = std::max(sup, ratio);
        }
        report.points.emplace_back(t, sup);
    }
    auto smallest = std::min_element(report.points.begin(), report.points.end(),
                                     [](const auto& a, const auto& b) {
                                         return std::abs(a.first) < std::abs(b.first);
                                     });
    double peak = 0.0;
    for (const auto& [t, w] : report.points) peak = std::max(peak, w);
    report.vanishing = smallest != report.points.end() &&
                       (peak == 0.0 || smallest->second <= opts.vanish_fraction * peak);
    return report;
}

}  // namespace solwave
