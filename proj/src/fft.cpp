#include <fftw3.h>

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "solwave/field.hpp"

namespace solwave {
namespace {

// FFTW's planner mutates global state; executing a plan on fresh buffers is
// thread-safe. Plans are created with FFTW_UNALIGNED so they can run on
// std::vector storage.
class FftEngine {
  public:
    static FftEngine& instance() {
        static FftEngine engine;
        return engine;
    }

    ~FftEngine() {
        for (auto& [key, p] : plans_) fftw_destroy_plan(p);
        fftw_cleanup();
    }

    void forward(int n, const std::complex<double>* in, std::complex<double>* out) {
        execute(plan(n, FFTW_FORWARD), in, out);
    }
    void backward(int n, const std::complex<double>* in, std::complex<double>* out) {
        execute(plan(n, FFTW_BACKWARD), in, out);
    }

  private:
    fftw_plan plan(int n, int sign) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto key = std::make_pair(n, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        std::vector<std::complex<double>> a(n), b(n);
        fftw_plan p = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(a.data()),
                                       reinterpret_cast<fftw_complex*>(b.data()), sign,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, p);
        return p;
    }

    static void execute(fftw_plan p, const std::complex<double>* in, std::complex<double>* out) {
        fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                         reinterpret_cast<fftw_complex*>(out));
    }

    std::mutex mutex_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

}  // namespace

Spectrum transform(const Field& f) {
    if (f.cached_spectrum()) return *f.cached_spectrum();

    const Grid& g = f.grid();
    const int m = g.size();
    std::vector<std::complex<double>> in(m), raw(m);
    for (int j = 0; j < m; ++j) in[j] = f[j];
    FftEngine::instance().forward(m, in.data(), raw.data());

    // raw[k'] = sum_j f_j exp(-2 pi i j k'/M). Coefficient for wavenumber
    // index k (storage i = k + M/2) is (h/sqrt(2 pi)) (-1)^k raw[(k+M) mod M];
    // the (-1)^k phase accounts for the nodes starting at x = -l.
    const double scale = g.spacing() / std::sqrt(2.0 * M_PI);
    std::vector<std::complex<double>> coeffs(m);
    for (int i = 0; i < m; ++i) {
        const int k = i - m / 2;
        const int kp = (k + m) % m;
        const double sign = (k & 1) ? -1.0 : 1.0;
        coeffs[i] = scale * sign * raw[kp];
    }
    return Spectrum(g, std::move(coeffs));
}

Field inverse_transform(const Spectrum& s) {
    const Grid& g = s.grid();
    const int m = g.size();
    const double scale = std::sqrt(2.0 * M_PI) / g.spacing();

    std::vector<std::complex<double>> raw(m), out(m);
    for (int i = 0; i < m; ++i) {
        const int k = i - m / 2;
        const int kp = (k + m) % m;
        const double sign = (k & 1) ? -1.0 : 1.0;
        raw[kp] = scale * sign * s.coeffs()[i];
    }
    FftEngine::instance().backward(m, raw.data(), out.data());

    std::vector<double> values(m);
    const double inv_m = 1.0 / m;
    for (int j = 0; j < m; ++j) values[j] = out[j].real() * inv_m;
    return Field(g, std::move(values), std::make_shared<Spectrum>(s));
}

}  // namespace solwave
