#include "solwave/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <random>

namespace solwave {
namespace {

struct LineFit {
    double slope = 0.0, intercept = 0.0, r2 = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const int n = static_cast<int>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (int i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r2 = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
    return fit;
}

std::vector<const SweepEntry*> usable_entries(const SweepReport& report) {
    std::vector<const SweepEntry*> out;
    for (const SweepEntry& e : report.entries)
        if (e.converged && e.tail_ok) out.push_back(&e);
    return out;
}

// Fritsch-Carlson monotone cubic interpolant.
class MonotoneCubic {
  public:
    MonotoneCubic(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
        const int n = static_cast<int>(x_.size());
        d_.assign(n, 0.0);
        if (n < 2) return;
        std::vector<double> h(n - 1), delta(n - 1);
        for (int i = 0; i + 1 < n; ++i) {
            h[i] = x_[i + 1] - x_[i];
            delta[i] = (y_[i + 1] - y_[i]) / h[i];
        }
        d_[0] = delta[0];
        d_[n - 1] = delta[n - 2];
        for (int i = 1; i + 1 < n; ++i) {
            if (delta[i - 1] * delta[i] <= 0.0)
                d_[i] = 0.0;
            else {
                const double w1 = 2.0 * h[i] + h[i - 1];
                const double w2 = h[i] + 2.0 * h[i - 1];
                d_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
            }
        }
        for (int i = 0; i + 1 < n; ++i) {
            if (delta[i] == 0.0) {
                d_[i] = d_[i + 1] = 0.0;
                continue;
            }
            const double a = d_[i] / delta[i], b = d_[i + 1] / delta[i];
            const double s = a * a + b * b;
            if (s > 9.0) {
                const double t = 3.0 / std::sqrt(s);
                d_[i] = t * a * delta[i];
                d_[i + 1] = t * b * delta[i];
            }
        }
    }

    double operator()(double x) const {
        auto it = std::upper_bound(x_.begin(), x_.end(), x);
        int i = std::clamp(static_cast<int>(it - x_.begin()) - 1, 0,
                           static_cast<int>(x_.size()) - 2);
        const double h = x_[i + 1] - x_[i];
        const double t = (x - x_[i]) / h;
        const double h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
        const double h10 = t * (1.0 - t) * (1.0 - t);
        const double h01 = t * t * (3.0 - 2.0 * t);
        const double h11 = t * t * (t - 1.0);
        return h00 * y_[i] + h * h10 * d_[i] + h01 * y_[i + 1] + h * h11 * d_[i + 1];
    }

    double min_x() const { return x_.front(); }
    double max_x() const { return x_.back(); }

  private:
    std::vector<double> x_, y_, d_;
};

double spearman_rho(const std::vector<double>& a, const std::vector<double>& b) {
    const int n = static_cast<int>(a.size());
    auto ranks = [n](const std::vector<double>& v) {
        std::vector<int> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&v](int i, int j) { return v[i] < v[j]; });
        std::vector<double> r(n);
        for (int pos = 0; pos < n; ++pos) r[idx[pos]] = pos;
        return r;
    };
    const auto ra = ranks(a), rb = ranks(b);
    double num = 0.0;
    for (int i = 0; i < n; ++i) {
        const double d = ra[i] - rb[i];
        num += d * d;
    }
    return 1.0 - 6.0 * num / (n * (double(n) * n - 1.0));
}

}  // namespace

FittedExponents fit_scaling(const SweepReport& report) {
    const auto entries = usable_entries(report);
    std::vector<double> lmu, lenergy, lspeed;
    for (const SweepEntry* e : entries) {
        if (!(e->energy < 0.0) || !(e->speed_defect > 0.0)) continue;
        lmu.push_back(std::log(e->mu));
        lenergy.push_back(std::log(-e->energy));
        lspeed.push_back(std::log(e->speed_defect));
    }
    if (lmu.size() < 5)
        throw ConfigError("scaling fit needs at least 5 converged entries, have " +
                          std::to_string(lmu.size()));
    const auto [lo, hi] = std::minmax_element(lmu.begin(), lmu.end());
    if (*hi - *lo < 0.999 * std::log(10.0))
        throw ConfigError("scaling fit needs the mu values to span at least one decade");

    const LineFit fe = least_squares(lmu, lenergy);
    const LineFit fs = least_squares(lmu, lspeed);
    FittedExponents fit;
    fit.energy_slope = fe.slope;
    fit.kappa = std::exp(fe.intercept);
    fit.r2_energy = fe.r2;
    fit.speed_slope = fs.slope;
    fit.r2_speed = fs.r2;
    fit.entries_used = static_cast<int>(lmu.size());
    return fit;
}

RatioTable near_minimizer_ratios(const SweepReport& report, double ratio_stability) {
    RatioTable table;
    table.stability_bound = ratio_stability;
    const double beta = report.beta;
    for (const SweepEntry* e : usable_entries(report)) {
        RatioRow row;
        row.mu = e->mu;
        const double scale = std::pow(e->mu, 1.0 + beta);
        row.ldisp_ratio = e->ldisp / scale;
        row.n_ratio = (e->np + e->nr) / scale;
        row.lp_ratio = std::pow(e->norm_l2p, 2.0 + report.p) / scale;
        row.hs_ratio = e->norm_hs2 * e->norm_hs2 / e->mu;
        table.rows.push_back(row);
    }
    if (table.rows.empty()) return table;
    auto spread = [&table](double RatioRow::* member) {
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (const RatioRow& r : table.rows) {
            lo = std::min(lo, r.*member);
            hi = std::max(hi, r.*member);
        }
        return lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
    };
    table.ldisp_spread = spread(&RatioRow::ldisp_ratio);
    table.n_spread = spread(&RatioRow::n_ratio);
    table.lp_spread = spread(&RatioRow::lp_ratio);
    table.hs_spread = spread(&RatioRow::hs_ratio);
    table.pass = table.ldisp_spread < ratio_stability && table.n_spread < ratio_stability &&
                 table.lp_spread < ratio_stability && table.hs_spread < ratio_stability;
    return table;
}

RemainderTrend remainder_smallness(const SweepReport& report) {
    RemainderTrend trend;
    if (report.r == 0.0) {
        trend.skipped = true;
        trend.note = "model has no remainder term";
        return trend;
    }
    std::vector<double> mus, ratios;
    for (const SweepEntry* e : usable_entries(report)) {
        const double ratio = std::abs(e->nr) / std::pow(e->mu, 1.0 + report.beta);
        trend.ratios.emplace_back(e->mu, ratio);
        mus.push_back(e->mu);
        ratios.push_back(ratio);
    }
    if (mus.size() < 3) {
        trend.skipped = true;
        trend.note = "too few converged entries";
        return trend;
    }
    trend.spearman = spearman_rho(mus, ratios);
    std::vector<double> lmu, lratio;
    for (size_t i = 0; i < mus.size(); ++i) {
        if (ratios[i] <= 0.0) continue;
        lmu.push_back(std::log(mus[i]));
        lratio.push_back(std::log(ratios[i]));
    }
    if (lmu.size() >= 3) trend.slope = least_squares(lmu, lratio).slope;
    // the ratio must shrink with mu: perfectly rank-correlated with mu
    trend.decreasing_toward_zero = trend.spearman > 0.8 && trend.slope > 0.0;
    return trend;
}

SubadditivityTable subadditivity_check(const SweepReport& report,
                                       const std::vector<std::pair<double, double>>& pairs) {
    std::vector<double> lmu, lneg;
    for (const SweepEntry* e : usable_entries(report)) {
        if (!(e->energy < 0.0)) continue;
        lmu.push_back(std::log(e->mu));
        lneg.push_back(std::log(-e->energy));
    }
    if (lmu.size() < 3) throw ConfigError("subadditivity check needs at least 3 converged entries");
    MonotoneCubic interp(lmu, lneg);
    auto I = [&interp](double mu) { return -std::exp(interp(std::log(mu))); };
    const double mu_min = std::exp(interp.min_x()), mu_max = std::exp(interp.max_x());

    SubadditivityTable table;
    table.all_strict = true;
    for (const auto& [mu1, mu2] : pairs) {
        if (!(mu1 > 0.0) || !(mu2 > 0.0) || mu1 < mu_min || mu2 < mu_min ||
            mu1 + mu2 > mu_max) {
            ++table.skipped;
            continue;
        }
        SubadditivityRow row;
        row.mu1 = mu1;
        row.mu2 = mu2;
        row.i1 = I(mu1);
        row.i2 = I(mu2);
        row.i_sum = I(mu1 + mu2);
        row.margin = row.i1 + row.i2 - row.i_sum;
        if (!(row.margin > 0.0)) table.all_strict = false;
        table.rows.push_back(row);
    }
    if (table.rows.empty()) table.all_strict = false;
    return table;
}

std::vector<std::pair<double, double>> sample_subadditivity_pairs(const SweepReport& report,
                                                                  int count, std::uint64_t seed) {
    double mu_min = 0.0, mu_max = 0.0;
    for (const SweepEntry* e : usable_entries(report)) {
        if (mu_min == 0.0) mu_min = e->mu;
        mu_max = std::max(mu_max, e->mu);
        mu_min = std::min(mu_min, e->mu);
    }
    // both parts are drawn from [mu_min, mu_max/2] so their sum stays in range
    if (!(mu_max / 2.0 > mu_min)) throw ConfigError("sweep range too narrow to sample pairs");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(std::log(mu_min), std::log(mu_max / 2.0));
    std::vector<std::pair<double, double>> pairs;
    while (static_cast<int>(pairs.size()) < count) {
        const double a = std::exp(unif(rng)), b = std::exp(unif(rng));
        if (a + b <= mu_max) pairs.emplace_back(a, b);
    }
    return pairs;
}

namespace {

// Smooth step: 0 for t <= 0, 1 for t >= 1.
double smooth_step(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / t);
    const double b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
}

// CDF of a mollifier supported in [-1/4, 1/4].
double mollifier_cdf(double x) { return smooth_step(2.0 * x + 0.5); }

// Unit-cell window: characteristic function of [-1/2, 1/2] convolved with the
// mollifier; supported in [-3/4, 3/4] and summing to one over integer shifts.
double cell_window(double x) { return mollifier_cdf(x + 0.5) - mollifier_cdf(x - 0.5); }

}  // namespace

CongestionProfile congestion_profile(const Field& u, double p) {
    const Grid& g = u.grid();
    const int jmin = static_cast<int>(std::floor(-g.half_length() - 1.0));
    const int jmax = static_cast<int>(std::ceil(g.half_length() + 1.0));
    std::vector<double> sums(jmax - jmin + 1, 0.0);

    CongestionProfile out;
    const double q = 2.0 + p;
    for (int i = 0; i < g.size(); ++i) {
        const double x = g.node(i);
        double partition = 0.0;
        const int lo = static_cast<int>(std::ceil(x - 0.75));
        const int hi = static_cast<int>(std::floor(x + 0.75));
        for (int j = lo; j <= hi; ++j) {
            const double w = cell_window(x - j);
            partition += w;
            if (j >= jmin && j <= jmax)
                sums[j - jmin] += std::pow(std::abs(w * u[i]), q);
        }
        out.partition_error = std::max(out.partition_error, std::abs(partition - 1.0));
    }
    const double h = g.spacing();
    for (int j = jmin; j <= jmax; ++j) {
        const double norm = std::pow(sums[j - jmin] * h, 1.0 / q);
        if (norm > 0.0) out.profile.emplace_back(j, norm);
        out.max_value = std::max(out.max_value, norm);
    }
    return out;
}

std::vector<std::pair<double, double>> commutator_decay(const SymbolSpec& m,
                                                        const std::string& profile,
                                                        const std::vector<double>& r_list,
                                                        int probes, const CommutatorOptions& opts) {
    std::function<double(double)> window;
    if (profile == "gaussian")
        window = [](double x) { return std::exp(-x * x); };
    else if (profile == "sech")
        window = [](double x) { return 1.0 / std::cosh(x); };
    else if (profile == "bump")
        window = [](double x) {
            return std::abs(x) < 1.0 ? std::exp(-1.0 / (1.0 - x * x)) * std::exp(1.0) : 0.0;
        };
    else
        throw ConfigError("unknown window profile '" + profile + "'");

    const Grid& g = opts.grid;
    const std::vector<double> mvals = evaluate_symbol_on_grid(m, g);
    std::vector<double> wvals(g.size());
    for (int i = 0; i < g.size(); ++i) {
        const double xi = g.wavenumber_at(i);
        wvals[i] = std::pow(1.0 + xi * xi, -0.25 * m.s);  // <xi>^{-s/2}
    }

    auto multiplier = [&g](const std::vector<double>& vals, const Field& f) {
        return apply_multiplier(vals, f);
    };

    std::vector<std::pair<double, double>> estimates;
    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> gauss;

    for (double r : r_list) {
        if (!(r > 0.0)) throw ConfigError("commutator radii must be positive");
        std::vector<double> phi(g.size());
        for (int j = 0; j < g.size(); ++j) phi[j] = window(g.node(j) / r);

        auto apply_B = [&](const Field& v) {
            std::vector<double> pv(g.size());
            for (int j = 0; j < g.size(); ++j) pv[j] = phi[j] * v[j];
            const Field l_phi_v = multiplier(mvals, Field(g, std::move(pv)));
            const Field lv = multiplier(mvals, v);
            std::vector<double> out(g.size());
            for (int j = 0; j < g.size(); ++j) out[j] = l_phi_v[j] - phi[j] * lv[j];
            return Field(g, std::move(out));
        };
        // C = W B W maps L2 to L2 with the same operator norm as
        // B : H^{s/2} -> H^{-s/2}; C is antisymmetric, so power-iterate C^T C = -C^2.
        auto apply_C = [&](const Field& v) { return multiplier(wvals, apply_B(multiplier(wvals, v))); };

        double best = 0.0;
        for (int probe = 0; probe < probes; ++probe) {
            std::vector<double> v0(g.size());
            for (double& x : v0) x = gauss(rng);
            Field v(g, std::move(v0));
            double lambda = 0.0;
            for (int it = 0; it < opts.iterations; ++it) {
                const Field cv = apply_C(v);
                Field av = apply_C(cv);
                std::vector<double> neg(g.size());
                for (int j = 0; j < g.size(); ++j) neg[j] = -av[j];
                Field w(g, std::move(neg));
                const double norm_w = lp_norm(w, 2.0);
                if (norm_w == 0.0) break;
                lambda = inner_product(v, w) / inner_product(v, v);
                std::vector<double> vn(g.size());
                for (int j = 0; j < g.size(); ++j) vn[j] = w[j] / norm_w;
                v = Field(g, std::move(vn));
            }
            best = std::max(best, lambda > 0.0 ? std::sqrt(lambda) : 0.0);
        }
        estimates.emplace_back(r, best);
    }
    return estimates;
}

RegularityReport regularity_report(const SolveResult& result, const SymbolSpec& m,
                                   const NonlinearitySpec& n, int pad_factor) {
    RegularityReport rep;
    const Field& u = result.u;
    rep.h1s_ratio = result.norm_h1s * result.norm_h1s / result.mu;
    rep.residual = result.residual;

    const double nu = result.nu;
    rep.lambda_invertible = 1.0 - nu > 0.0;
    const std::vector<double> mvals = evaluate_symbol_on_grid(m, u.grid());
    for (double mv : mvals)
        if (!(mv - nu + 1.0 > 0.0)) rep.lambda_invertible = false;
    if (!rep.lambda_invertible) return rep;

    // (L - nu + 1)^{-1} (n(u) + u) must reproduce u
    const Field nu_field = dealiased_pointwise(u, [&n](double x) { return n(x); }, pad_factor);
    std::vector<double> rhs(u.size());
    for (int j = 0; j < u.size(); ++j) rhs[j] = nu_field[j] + u[j];
    Spectrum rhat = transform(Field(u.grid(), std::move(rhs)));
    for (int i = 0; i < u.size(); ++i) rhat.coeffs()[i] /= mvals[i] - nu + 1.0;
    const Field w = inverse_transform(rhat);

    double sum = 0.0;
    for (int j = 0; j < u.size(); ++j) sum += (w[j] - u[j]) * (w[j] - u[j]);
    rep.fixed_point_error = std::sqrt(sum * u.grid().spacing());
    rep.ok = rep.fixed_point_error < 10.0 * result.residual;
    return rep;
}

}  // namespace solwave
