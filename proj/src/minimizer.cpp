#include "solwave/minimizer.hpp"

#include "solwave/summation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <thread>

namespace solwave {
namespace {

using cd = std::complex<double>;

double triangle(double y) { return std::max(0.0, 1.0 - std::abs(y)); }

struct EnergyParts {
    double e = std::numeric_limits<double>::quiet_NaN();
    double ldisp = 0.0;
    double np = 0.0;
    double nr = 0.0;
};

// Spectral-state evaluator for one solve: fixed grid, symbol values and
// padded grid. Mirrors eval_E / gradient_E but keeps everything in
// coefficient space and reuses the padded field between energy and gradient.
class Evaluator {
  public:
    Evaluator(const Grid& grid, const SymbolSpec& m, const NonlinearitySpec& n, int pad_factor)
        : grid_(grid),
          fine_(grid.half_length(), grid.size() * pad_factor),
          n_(n),
          pad_(pad_factor),
          mvals_(evaluate_symbol_on_grid(m, grid)),
          dxi_(grid.xi_weight()) {
        dual_.resize(grid.size());
        for (int i = 0; i < grid.size(); ++i) {
            const double xi = grid.wavenumber_at(i);
            dual_[i] = std::pow(1.0 + xi * xi, -0.5 * m.s);
        }
    }

    const Grid& grid() const { return grid_; }
    const std::vector<double>& symbol_values() const { return mvals_; }

    double mass(const std::vector<cd>& uhat) const {
        KahanSum sum;
        for (const cd& c : uhat) sum.add(std::norm(c));
        return 0.5 * sum.value() * dxi_;
    }

    void project(std::vector<cd>& uhat, double mu) const {
        const double q = mass(uhat);
        const double f = std::sqrt(mu / q);
        for (cd& c : uhat) c *= f;
    }

    Field to_field(const std::vector<cd>& uhat) const {
        return inverse_transform(Spectrum(grid_, uhat));
    }

    Field fine_field(const std::vector<cd>& uhat) const {
        return inverse_transform(pad_spectrum(Spectrum(grid_, uhat), pad_));
    }

    EnergyParts energy(const std::vector<cd>& uhat, const Field& fine) const {
        EnergyParts parts;
        KahanSum sum;
        for (int i = 0; i < grid_.size(); ++i) sum.add(mvals_[i] * std::norm(uhat[i]));
        parts.ldisp = 0.5 * sum.value() * dxi_;
        KahanSum sum_n;
        for (double v : fine.values()) sum_n.add(primitive_N(n_, v));
        const double total = sum_n.value() * fine.grid().spacing();
        parts.np = total;  // split recomputed at the end through the public API
        parts.nr = 0.0;
        parts.e = parts.ldisp - total;
        return parts;
    }

    EnergyParts energy(const std::vector<cd>& uhat) const { return energy(uhat, fine_field(uhat)); }

    // Spectrum of n(u) restricted to the solve band (Nyquist zeroed).
    std::vector<cd> nonlinear_hat(const Field& fine) const {
        std::vector<double> nv(fine.size());
        for (int j = 0; j < fine.size(); ++j) nv[j] = n_(fine[j]);
        const Spectrum full = transform(Field(fine.grid(), std::move(nv)));
        return truncate_spectrum(full, grid_).coeffs();
    }

    double inner(const std::vector<cd>& a, const std::vector<cd>& b) const {
        double sum = 0.0;
        for (size_t i = 0; i < a.size(); ++i)
            sum += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        return sum * dxi_;
    }

    double dual_norm(const std::vector<cd>& a) const {
        double sum = 0.0;
        for (size_t i = 0; i < a.size(); ++i) sum += dual_[i] * std::norm(a[i]);
        return std::sqrt(sum * dxi_);
    }

  private:
    Grid grid_;
    Grid fine_;
    NonlinearitySpec n_;
    int pad_;
    std::vector<double> mvals_;
    std::vector<double> dual_;
    double dxi_;
};

SolveResult failed_result(const SolveConfig& cfg, const std::string& why) {
    SolveResult r{Field(Grid(1.0, 8))};
    r.mu = cfg.mu;
    r.converged = false;
    r.stop_reason = why;
    return r;
}

}  // namespace

double ansatz_width(double mu, const SymbolSpec& m, const NonlinearitySpec& n, double B) {
    const double beta = theoretical_beta(m.s_prime, n.p);
    return std::pow(B * std::pow(mu, beta), -1.0 / m.s_prime);
}

Field ansatz(double mu, const SymbolSpec& m, const NonlinearitySpec& n, double B,
             const Grid& grid) {
    if (!(mu > 0.0)) throw ConfigError("ansatz needs mu > 0");
    if (!(B > 0.0)) throw ConfigError("ansatz needs B > 0");
    const double t = ansatz_width(mu, m, n, B);
    if (t < 1.0) {
        std::ostringstream msg;
        msg << "ansatz width t = " << t << " is below 1; the scale parameter B = " << B
            << " is too large for mu = " << mu;
        throw ConfigError(msg.str());
    }
    if (grid.wavenumber(grid.size() / 2 - 1) <= 1.0 / t)
        throw ConfigError("grid cannot resolve the trial profile band |xi| < 1/t");

    Spectrum s(grid);
    for (int i = 1; i < grid.size(); ++i)
        s.coeffs()[i] = triangle(t * grid.wavenumber_at(i));
    Field phi = inverse_transform(s);
    if (n.c < 0.0) {
        std::vector<double> v(phi.size());
        for (int j = 0; j < phi.size(); ++j) v[j] = -phi[j];
        phi = Field(grid, std::move(v));
    }
    return rescale_mass(phi, mu);
}

BOptimum optimize_B(double mu, const SymbolSpec& m, const NonlinearitySpec& n, const Grid& grid,
                    const BSearchRange& range, int pad_factor) {
    if (!(range.b_min > 0.0) || !(range.b_max > range.b_min) || range.points < 4)
        throw ConfigError("invalid B search range");

    auto energy_at = [&](double B) -> double {
        try {
            return eval_E(ansatz(mu, m, n, B, grid), m, n, pad_factor).e;
        } catch (const ConfigError&) {
            return std::numeric_limits<double>::infinity();  // t < 1 or band unresolved
        }
    };

    const double la = std::log(range.b_min), lb = std::log(range.b_max);
    double best_b = range.b_min, best_e = std::numeric_limits<double>::infinity();
    for (int i = 0; i < range.points; ++i) {
        const double b = std::exp(la + (lb - la) * i / (range.points - 1));
        const double e = energy_at(b);
        if (e < best_e) {
            best_e = e;
            best_b = b;
        }
    }
    if (!std::isfinite(best_e))
        throw ConfigError("no admissible B in the search range (ansatz width below 1 everywhere)");

    // golden-section refinement in log B around the best scan point
    const double step = (lb - la) / (range.points - 1);
    double lo = std::log(best_b) - step, hi = std::log(best_b) + step;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = energy_at(std::exp(x1)), f2 = energy_at(std::exp(x2));
    for (int it = 0; it < 40 && hi - lo > 1e-4; ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = energy_at(std::exp(x1));
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = energy_at(std::exp(x2));
        }
    }
    const double refined_b = std::exp(f1 < f2 ? x1 : x2);
    const double refined_e = std::min(f1, f2);
    BOptimum opt;
    opt.b = refined_e < best_e ? refined_b : best_b;
    opt.energy = std::min(refined_e, best_e);
    opt.negative_energy = opt.energy < 0.0;
    return opt;
}

SolveResult solve(const SolveConfig& cfg) {
    if (!(cfg.mu > 0.0)) throw ConfigError("solve needs mu > 0");
    if (!(cfg.grad_tol_factor > 0.0) || !(cfg.e_tol > 0.0))
        throw ConfigError("solve tolerances must be positive");
    if (cfg.pad_factor < 1) throw ConfigError("pad factor must be >= 1");

    const SymbolSpec& m = cfg.symbol;
    const NonlinearitySpec& n = cfg.nonlinearity;
    const double mu = cfg.mu;

    // Grid policy: size the box from the optimal trial-profile width. The B
    // scan runs twice, the second time on a grid already sized for its own
    // optimum, so box and profile are consistent.
    BOptimum opt;
    if (cfg.fixed_B) {
        opt.b = *cfg.fixed_B;
        opt.negative_energy = true;
    } else {
        const double b0 = std::sqrt(cfg.b_search.b_min * cfg.b_search.b_max);
        const double t0 = std::max(1.0, ansatz_width(mu, m, n, b0));
        opt = optimize_B(mu, m, n, Grid(cfg.domain_factor * t0, cfg.modes), cfg.b_search,
                         cfg.pad_factor);
        const double t1 = ansatz_width(mu, m, n, opt.b);
        opt = optimize_B(mu, m, n, Grid(cfg.domain_factor * t1, cfg.modes), cfg.b_search,
                         cfg.pad_factor);
    }
    const double t_star = ansatz_width(mu, m, n, opt.b);
    const Grid grid(cfg.domain_factor * t_star, cfg.modes);

    Field u0 = cfg.initial_guess ? rescale_mass(resample(*cfg.initial_guess, grid), mu)
                                 : ansatz(mu, m, n, opt.b, grid);

    Evaluator ev(grid, m, n, cfg.pad_factor);

    // preconditioner 1/(1 + m); falls back to the identity if 1 + m is not
    // uniformly positive on the grid
    std::vector<double> pvals(grid.size(), 1.0);
    if (cfg.precondition) {
        bool ok = true;
        for (double mv : ev.symbol_values())
            if (!(1.0 + mv > 1e-12)) ok = false;
        if (ok)
            for (int i = 0; i < grid.size(); ++i) pvals[i] = 1.0 / (1.0 + ev.symbol_values()[i]);
    }

    const double grad_tol = cfg.grad_tol_factor * std::sqrt(mu);
    const int m_size = grid.size();

    std::vector<cd> uhat = transform(u0).coeffs();
    uhat[0] = 0.0;  // Nyquist stays empty throughout
    ev.project(uhat, mu);

    Field fine = ev.fine_field(uhat);
    EnergyParts cur = ev.energy(uhat, fine);

    std::vector<double> energy_trace{cur.e}, q_trace{ev.mass(uhat)};

    std::vector<cd> uhat_prev, dhat_prev;
    bool have_prev = false;
    double tau = 1.0;
    int rejected_run = 0, stall_run = 0;
    int iter = 0;
    std::string stop_reason = "max_iters";

    std::vector<cd> grad(m_size), ghat(m_size), dhat(m_size), vhat(m_size);

    for (iter = 0; iter < cfg.max_iters; ++iter) {
        const std::vector<cd> nhat = ev.nonlinear_hat(fine);
        for (int i = 0; i < m_size; ++i) grad[i] = ev.symbol_values()[i] * uhat[i] - nhat[i];

        const double nu = ev.inner(grad, uhat) / (2.0 * mu);
        for (int i = 0; i < m_size; ++i) ghat[i] = grad[i] - nu * uhat[i];

        const double resid = ev.dual_norm(ghat);
        if (resid <= 0.98 * grad_tol) {
            stop_reason = "grad_tol";
            break;
        }

        for (int i = 0; i < m_size; ++i) dhat[i] = pvals[i] * ghat[i];

        if (have_prev) {
            double sy = 0.0, yy = 0.0;
            for (int i = 0; i < m_size; ++i) {
                const cd s = uhat[i] - uhat_prev[i];
                const cd y = dhat[i] - dhat_prev[i];
                sy += s.real() * y.real() + s.imag() * y.imag();
                yy += std::norm(y);
            }
            if (sy > 0.0 && yy > 0.0) tau = std::clamp(sy / yy, 1e-12, 1e10);
        }

        double tau_try = tau;
        bool accepted = false;
        EnergyParts trial;
        Field trial_fine(grid);
        for (int bt = 0; bt < 60; ++bt) {
            for (int i = 0; i < m_size; ++i) vhat[i] = uhat[i] - tau_try * dhat[i];
            ev.project(vhat, mu);
            trial_fine = ev.fine_field(vhat);
            trial = ev.energy(vhat, trial_fine);
            if (std::isfinite(trial.e) && trial.e <= cur.e) {
                accepted = true;
                break;
            }
            tau_try *= 0.5;
        }
        if (!accepted) {
            tau = 1.0;
            have_prev = false;
            if (++rejected_run >= 3) {
                stop_reason = "no_descent";
                break;
            }
            continue;
        }
        rejected_run = 0;

        uhat_prev = uhat;
        dhat_prev = dhat;
        have_prev = true;

        const double decrease = cur.e - trial.e;
        if (decrease <= cfg.e_tol * std::max(std::abs(trial.e), 1e-300))
            ++stall_run;
        else
            stall_run = 0;

        uhat = vhat;
        fine = trial_fine;
        cur = trial;
        tau = tau_try;
        energy_trace.push_back(cur.e);
        q_trace.push_back(ev.mass(uhat));

        if (cfg.use_symmetrize) {
            Field uf = recenter(ev.to_field(uhat));
            uhat = transform(rescale_mass(symmetrize(uf), mu)).coeffs();
            uhat[0] = 0.0;
            ev.project(uhat, mu);
            fine = ev.fine_field(uhat);
            cur = ev.energy(uhat, fine);
        }

        if (stall_run >= 200) {
            stop_reason = "stalled";
            break;
        }
    }

    // Refinement on the profile equation itself: fixed-step preconditioned
    // iteration, immune to round-off in energy comparisons. Runs only when
    // the descent phase stopped short of the gradient tolerance, within the
    // leftover iteration budget.
    int polish_iters = 0;
    const int polish_budget = std::min(3000, cfg.max_iters - iter);
    if (stop_reason != "grad_tol" && polish_budget > 0) {
        double amp = 0.0;
        for (double v : fine.values()) amp = std::max(amp, std::abs(v));
        double lip_local = 0.0;
        const double span = 1.05 * amp, fd = 1e-7 * std::max(1.0, span);
        for (int i = 0; i <= 512; ++i) {
            const double x = -span + 2.0 * span * i / 512;
            lip_local = std::max(lip_local, std::abs(n(x + fd) - n(x - fd)) / (2.0 * fd));
        }

        std::vector<cd> grad_p(m_size), ghat_p(m_size);
        double tau_polish = 0.0;
        double best = std::numeric_limits<double>::infinity();
        int since_best = 0;
        for (; polish_iters < polish_budget; ++polish_iters) {
            const std::vector<cd> nhat = ev.nonlinear_hat(fine);
            for (int i = 0; i < m_size; ++i)
                grad_p[i] = ev.symbol_values()[i] * uhat[i] - nhat[i];
            const double nu_p = ev.inner(grad_p, uhat) / (2.0 * mu);
            for (int i = 0; i < m_size; ++i) ghat_p[i] = grad_p[i] - nu_p * uhat[i];
            const double resid = ev.dual_norm(ghat_p);
            if (resid <= 0.98 * grad_tol) {
                stop_reason = "grad_tol";
                break;
            }
            if (resid < 0.9995 * best) {
                best = resid;
                since_best = 0;
            } else if (++since_best > 100) {
                break;
            }
            if (tau_polish == 0.0) {
                double curvature = 0.0;
                for (int i = 0; i < m_size; ++i) {
                    const double mv = ev.symbol_values()[i];
                    curvature = std::max(curvature, (mv - nu_p + lip_local) * pvals[i]);
                }
                if (!(curvature > 0.0)) break;
                tau_polish = 0.9 / curvature;
            }
            for (int i = 0; i < m_size; ++i) uhat[i] -= tau_polish * pvals[i] * ghat_p[i];
            ev.project(uhat, mu);
            fine = ev.fine_field(uhat);
        }
    }

    // finalize: recenter, re-project, recompute everything through the public API
    Field u = recenter(ev.to_field(uhat));
    u = rescale_mass(u, mu);

    SolveResult res{u};
    res.mu = mu;
    res.nu = lagrange_multiplier(u, mu, m, n, cfg.pad_factor);
    res.nu_original = res.nu + m.shift;
    res.breakdown = eval_E(u, m, n, cfg.pad_factor);
    res.residual = el_residual(u, res.nu, m, n, cfg.pad_factor);
    res.residual_l2 = el_residual_l2(u, res.nu, m, n, cfg.pad_factor);
    res.iterations = iter;
    res.polish_iterations = polish_iters;
    res.converged = res.residual <= grad_tol;
    res.stop_reason = stop_reason;
    res.energy_trace = std::move(energy_trace);
    res.q_trace = std::move(q_trace);
    res.norm_hs2 = sobolev_norm(u, 0.5 * m.s);
    res.norm_h1s = sobolev_norm(u, 1.0 + m.s);
    res.norm_l2p = lp_norm(u, 2.0 + n.p);
    res.norm_linf = max_norm(u);
    res.half_length = grid.half_length();
    res.modes = grid.size();
    res.b_star = opt.b;
    res.t_star = t_star;
    res.tail = tail_mass(u);
    res.tail_ok = res.tail < 1e-10 * mu;
    return res;
}

SweepReport make_sweep_report(const std::vector<SolveResult>& results, const SolveConfig& cfg) {
    SweepReport report;
    report.s = cfg.symbol.s;
    report.s_prime = cfg.symbol.s_prime;
    report.p = cfg.nonlinearity.p;
    report.r = cfg.nonlinearity.has_remainder() ? cfg.nonlinearity.remainder->r : 0.0;
    report.m0 = cfg.symbol.m0 + cfg.symbol.shift;
    report.beta = theoretical_beta(report.s_prime, report.p);
    report.symbol_id = cfg.symbol.id;

    const double m_solve0 = cfg.symbol.m0;
    for (const SolveResult& r : results) {
        SweepEntry e;
        e.mu = r.mu;
        e.energy = r.breakdown.e - m_solve0 * r.mu;
        e.nu = r.nu_original;
        e.speed_defect = m_solve0 - r.nu;
        e.q = r.breakdown.q;
        e.ldisp = r.breakdown.ldisp - m_solve0 * r.mu;
        e.np = r.breakdown.np;
        e.nr = r.breakdown.nr;
        e.norm_hs2 = r.norm_hs2;
        e.norm_h1s = r.norm_h1s;
        e.norm_l2p = r.norm_l2p;
        e.norm_linf = r.norm_linf;
        e.residual = r.residual;
        e.tail = r.tail;
        e.iterations = r.iterations;
        e.converged = r.converged;
        e.tail_ok = r.tail_ok;
        e.note = r.stop_reason;
        report.entries.push_back(std::move(e));
    }
    std::sort(report.entries.begin(), report.entries.end(),
              [](const SweepEntry& a, const SweepEntry& b) { return a.mu < b.mu; });

    const SweepEntry* prev = nullptr;
    for (const SweepEntry& e : report.entries) {
        if (!e.converged) continue;
        if (prev && !(e.energy < prev->energy)) report.branch_change_warning = true;
        prev = &e;
    }
    return report;
}

SweepReport continuation_sweep(const std::vector<double>& mu_list, const SolveConfig& cfg_template,
                               int workers) {
    return continuation_sweep_full(mu_list, cfg_template, workers).report;
}

SweepRun continuation_sweep_full(const std::vector<double>& mu_list,
                                 const SolveConfig& cfg_template, int workers) {
    if (mu_list.empty()) throw ConfigError("sweep needs a non-empty mu list");
    for (size_t i = 0; i < mu_list.size(); ++i) {
        if (!(mu_list[i] > 0.0)) throw ConfigError("sweep mu values must be positive");
        if (i > 0 && mu_list[i] <= mu_list[i - 1])
            throw ConfigError("sweep mu list must be strictly ascending");
    }

    std::vector<SolveResult> results;
    if (workers <= 1) {
        std::optional<Field> guess;
        std::optional<double> b_fixed = cfg_template.fixed_B;
        for (auto it = mu_list.rbegin(); it != mu_list.rend(); ++it) {
            SolveConfig cfg = cfg_template;
            cfg.mu = *it;
            cfg.initial_guess = guess;
            cfg.fixed_B = b_fixed;
            try {
                SolveResult r = solve(cfg);
                guess = r.u;
                b_fixed = r.b_star;
                results.push_back(std::move(r));
            } catch (const std::exception& e) {
                results.push_back(failed_result(cfg, e.what()));
                guess.reset();
            }
        }
    } else {
        results.resize(mu_list.size(), failed_result(cfg_template, "pending"));
        std::atomic<size_t> next{0};
        auto worker = [&]() {
            for (size_t i = next.fetch_add(1); i < mu_list.size(); i = next.fetch_add(1)) {
                SolveConfig cfg = cfg_template;
                cfg.mu = mu_list[i];
                try {
                    results[i] = solve(cfg);
                } catch (const std::exception& e) {
                    results[i] = failed_result(cfg, e.what());
                }
            }
        };
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    std::sort(results.begin(), results.end(),
              [](const SolveResult& a, const SolveResult& b) { return a.mu < b.mu; });
    SweepRun run;
    run.report = make_sweep_report(results, cfg_template);
    run.results = std::move(results);
    return run;
}

}  // namespace solwave
