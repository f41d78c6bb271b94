#include "solwave/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

namespace solwave {
namespace {

using cd = std::complex<double>;

// phi_k(z) = (e^z - sum_{j<k} z^j/j!) / z^k, evaluated by series near zero.
cd phi_fn(int k, cd z) {
    if (std::abs(z) < 0.5) {
        double fact = 1.0;
        for (int j = 1; j <= k; ++j) fact *= j;
        cd term = 1.0 / fact;
        cd sum = term;
        for (int j = 1; j < 30; ++j) {
            term *= z / static_cast<double>(k + j);
            sum += term;
            if (std::abs(term) < 1e-20) break;
        }
        return sum;
    }
    const cd ez = std::exp(z);
    if (k == 1) return (ez - 1.0) / z;
    if (k == 2) return (ez - 1.0 - z) / (z * z);
    return (ez - 1.0 - z - 0.5 * z * z) / (z * z * z);
}

struct EtdCoefficients {
    std::vector<cd> e1, e2, q, f1, f2, f3;

    EtdCoefficients(const Grid& g, const std::vector<double>& mvals, double dt) {
        const int m = g.size();
        e1.resize(m);
        e2.resize(m);
        q.resize(m);
        f1.resize(m);
        f2.resize(m);
        f3.resize(m);
        for (int i = 0; i < m; ++i) {
            const double xi = g.wavenumber_at(i);
            const cd z = cd(0.0, -xi * mvals[i]) * dt;
            e1[i] = std::exp(z);
            e2[i] = std::exp(0.5 * z);
            q[i] = 0.5 * dt * phi_fn(1, 0.5 * z);
            const cd p1 = phi_fn(1, z), p2 = phi_fn(2, z), p3 = phi_fn(3, z);
            f1[i] = dt * (p1 - 3.0 * p2 + 4.0 * p3);
            f2[i] = dt * (p2 - 2.0 * p3);
            f3[i] = dt * (4.0 * p3 - p2);
        }
    }
};

}  // namespace

double suggested_dt(const Grid& grid, const SymbolSpec& m) {
    double w = 0.0;
    for (int i = 0; i < grid.size(); ++i) {
        const double xi = grid.wavenumber_at(i);
        w = std::max(w, std::abs(xi * m.eval(xi)));
    }
    return w > 0.0 ? 0.5 / w : 1.0;
}

Trajectory integrate(const Field& u0, const SymbolSpec& m, const NonlinearitySpec& n,
                     double t_end, double dt, std::vector<double> output_times,
                     const EvolveOptions& opts) {
    if (!(dt > 0.0)) throw ConfigError("time step must be positive");
    if (!(t_end > 0.0)) throw ConfigError("integration horizon must be positive");
    if (output_times.empty()) output_times = {t_end};
    std::sort(output_times.begin(), output_times.end());
    if (output_times.front() <= 0.0 || output_times.back() > t_end + 1e-12 * t_end)
        throw ConfigError("output times must lie in (0, t_end]");

    const Grid& g = u0.grid();
    const int msize = g.size();
    const std::vector<double> mvals = evaluate_symbol_on_grid(m, g);
    const Grid fine(g.half_length(), msize * opts.pad_factor);

    // spectral nonlinear flux +i xi n(u)^, dealiased on the padded grid;
    // also reports max|u| of the input for blow-up detection
    auto nonlinear = [&](const std::vector<cd>& uhat, double* amp) {
        const Field uf = inverse_transform(pad_spectrum(Spectrum(g, uhat), opts.pad_factor));
        if (amp) {
            double a = 0.0;
            for (double v : uf.values()) a = std::max(a, std::abs(v));
            *amp = a;
        }
        std::vector<double> nv(uf.size());
        for (int j = 0; j < uf.size(); ++j) nv[j] = n(uf[j]);
        Spectrum nhat = truncate_spectrum(transform(Field(fine, std::move(nv))), g);
        std::vector<cd> out(msize);
        for (int i = 0; i < msize; ++i)
            out[i] = cd(0.0, g.wavenumber_at(i)) * nhat.coeffs()[i];
        return out;
    };

    Trajectory traj;
    traj.dt_nominal = dt;
    traj.times.push_back(0.0);
    traj.snapshots.push_back(u0);
    const double q0 = eval_Q(u0);
    traj.q_values.push_back(q0);

    const double amp0 = max_norm(u0);
    std::vector<cd> uhat = transform(u0).coeffs();
    uhat[0] = 0.0;

    std::vector<cd> a(msize), b(msize), c(msize), nu_h(msize), na(msize), nb(msize), nc(msize);

    double t_prev = 0.0;
    for (double t_out : output_times) {
        const double interval = t_out - t_prev;
        if (interval <= 0.0) continue;
        const int steps = std::max(1, static_cast<int>(std::ceil(interval / dt - 1e-12)));
        const double h = interval / steps;
        const EtdCoefficients k(g, mvals, h);

        for (int step = 0; step < steps; ++step) {
            double amp = 0.0;
            nu_h = nonlinear(uhat, &amp);
            if (amp0 > 0.0 && amp > opts.blowup_factor * amp0) {
                std::ostringstream msg;
                msg << "solution blew up at t = " << t_prev + step * h << " (max|u| = " << amp
                    << ")";
                throw NumericalError(msg.str());
            }
            for (int i = 0; i < msize; ++i) a[i] = k.e2[i] * uhat[i] + k.q[i] * nu_h[i];
            na = nonlinear(a, nullptr);
            for (int i = 0; i < msize; ++i) b[i] = k.e2[i] * uhat[i] + k.q[i] * na[i];
            nb = nonlinear(b, nullptr);
            for (int i = 0; i < msize; ++i)
                c[i] = k.e2[i] * a[i] + k.q[i] * (2.0 * nb[i] - nu_h[i]);
            nc = nonlinear(c, nullptr);
            for (int i = 0; i < msize; ++i)
                uhat[i] = k.e1[i] * uhat[i] + k.f1[i] * nu_h[i] +
                          2.0 * k.f2[i] * (na[i] + nb[i]) + k.f3[i] * nc[i];
        }

        Field snap = inverse_transform(Spectrum(g, uhat));
        traj.times.push_back(t_out);
        traj.q_values.push_back(eval_Q(snap));
        traj.snapshots.push_back(std::move(snap));
        t_prev = t_out;
    }

    for (double q : traj.q_values)
        traj.q_drift = std::max(traj.q_drift, q0 > 0.0 ? std::abs(q - q0) / q0 : std::abs(q));
    return traj;
}

TravelingWaveError traveling_wave_error(const Trajectory& traj, double nu) {
    if (traj.snapshots.size() < 3)
        throw ConfigError("wave-speed measurement needs at least 3 snapshots");

    const Field ref = recenter(traj.snapshots.front());
    const double box = 2.0 * ref.grid().half_length();
    const double ref_norm = lp_norm(ref, 2.0);

    TravelingWaveError out;
    std::vector<double> times, positions;
    double prev = peak_location(traj.snapshots.front());
    positions.push_back(prev);
    times.push_back(traj.times.front());

    for (size_t i = 1; i < traj.snapshots.size(); ++i) {
        const Field& snap = traj.snapshots[i];
        const double raw = peak_location(snap);
        // unwrap periodic shifts, using nu to predict the next position
        const double expected = prev + nu * (traj.times[i] - traj.times[i - 1]);
        const double wraps = std::round((expected - raw) / box);
        const double pos = raw + wraps * box;
        positions.push_back(pos);
        times.push_back(traj.times[i]);
        prev = pos;

        // ambiguity: a second, well-separated peak of comparable height
        const double amp = max_norm(snap);
        double second = 0.0;
        for (int j = 0; j < snap.size(); ++j) {
            double d = std::abs(snap.grid().node(j) - raw);
            d = std::min(d, box - d);
            if (d > 0.125 * box) second = std::max(second, std::abs(snap[j]));
        }
        if (second > 0.8 * amp) out.tracking_ok = false;

        const Field moved = recenter(snap);
        double sum = 0.0;
        for (int j = 0; j < moved.size(); ++j) {
            const double d = moved[j] - ref[j];
            sum += d * d;
        }
        const double dist = std::sqrt(sum * moved.grid().spacing());
        out.shape_error = std::max(out.shape_error, ref_norm > 0.0 ? dist / ref_norm : dist);
    }

    // least-squares slope of position vs time
    const size_t n = times.size();
    double mt = 0.0, mp = 0.0;
    for (size_t i = 0; i < n; ++i) {
        mt += times[i];
        mp += positions[i];
    }
    mt /= n;
    mp /= n;
    double stt = 0.0, stp = 0.0;
    for (size_t i = 0; i < n; ++i) {
        stt += (times[i] - mt) * (times[i] - mt);
        stp += (times[i] - mt) * (positions[i] - mp);
    }
    out.measured_speed = stt > 0.0 ? stp / stt : 0.0;
    return out;
}

}  // namespace solwave
