#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "solwave/spectral_ops.hpp"

using namespace solwave;

TEST_CASE("grid layout and preconditions") {
    const Grid g(M_PI, 8);
    CHECK(g.spacing() == doctest::Approx(M_PI / 4.0).epsilon(1e-15));
    CHECK(g.wavenumber_at(0) == doctest::Approx(-4.0));
    CHECK(g.wavenumber_at(7) == doctest::Approx(3.0));
    CHECK(g.node(0) == doctest::Approx(-M_PI));

    const Grid g10(10.0, 16);
    CHECK(g10.wavenumber(1) == doctest::Approx(M_PI / 10.0));

    // quadrature weights sum to the box length
    CHECK(g10.spacing() * g10.size() == doctest::Approx(20.0));

    CHECK_THROWS_AS(make_grid(1.0, 7), ConfigError);
    CHECK_THROWS_AS(make_grid(1.0, 6), ConfigError);
    CHECK_THROWS_AS(make_grid(-2.0, 16), ConfigError);
    CHECK_THROWS_AS(make_grid(0.0, 16), ConfigError);
}

TEST_CASE("transform matches the defining sum") {
    std::mt19937 rng(7);
    const Grid g(3.0, 32);
    const Field f = oracles::random_field(g, rng);
    const Spectrum s = transform(f);
    const auto ref = oracles::naive_dft(f);
    for (int i = 0; i < g.size(); ++i)
        CHECK(std::abs(s.coeffs()[i] - ref[i]) < 1e-12);
}

TEST_CASE("single-mode and constant spectra") {
    const Grid g(5.0, 64);
    std::vector<double> cosv(g.size()), onev(g.size(), 1.0);
    for (int j = 0; j < g.size(); ++j) cosv[j] = std::cos(M_PI * g.node(j) / 5.0);

    const Spectrum sc = transform(Field(g, cosv));
    double off_band = 0.0;
    for (int k = -32; k < 32; ++k)
        if (k != 1 && k != -1) off_band = std::max(off_band, std::abs(sc.at(k)));
    CHECK(off_band < 1e-13);
    CHECK(std::abs(sc.at(1)) > 0.1);
    CHECK(std::abs(sc.at(1) - sc.at(-1)) < 1e-13);  // real even field

    const Spectrum s1 = transform(Field(g, onev));
    for (int k = -32; k < 32; ++k)
        if (k != 0) CHECK(std::abs(s1.at(k)) < 1e-13);
    CHECK(std::abs(s1.at(0)) > 0.1);
}

TEST_CASE("round trip and Parseval over random fields") {
    std::mt19937 rng(11);
    const Grid g(7.0, 128);
    for (int trial = 0; trial < 100; ++trial) {
        const Field f = oracles::random_field(g, rng);
        const Field back = inverse_transform(transform(f));
        double num = 0.0, den = 0.0;
        for (int j = 0; j < g.size(); ++j) {
            num += (back[j] - f[j]) * (back[j] - f[j]);
            den += f[j] * f[j];
        }
        CHECK(std::sqrt(num / den) < 1e-12);

        // Parseval: spectral L2 equals sample L2
        CHECK(sobolev_norm(f, 0.0) == doctest::Approx(lp_norm(f, 2.0)).epsilon(1e-12));
    }
}

TEST_CASE("spectra of real fields are conjugate symmetric") {
    std::mt19937 rng(3);
    const Grid g(4.0, 64);
    const Spectrum s = transform(oracles::random_field(g, rng));
    for (int k = 1; k < 32; ++k)
        CHECK(std::abs(s.at(-k) - std::conj(s.at(k))) < 1e-13);
    CHECK(std::abs(s.at(0).imag()) < 1e-13);
}

TEST_CASE("multiplier: identity, second derivative, whitham mode scaling") {
    const Grid g(M_PI, 64);
    std::vector<double> sinv(g.size());
    for (int j = 0; j < g.size(); ++j) sinv[j] = std::sin(g.node(j));
    const Field f(g, sinv);

    SymbolSpec unit{"one", [](double) { return 1.0; }, 1.0, 1.0, 1.0, 0.0};
    const Field id = apply_multiplier(unit, f);
    for (int j = 0; j < g.size(); ++j) CHECK(id[j] == doctest::Approx(f[j]).epsilon(1e-12));

    SymbolSpec xi2{"xi2", [](double xi) { return xi * xi; }, 2.0, 2.0, 0.0, 0.0};
    const Field d2 = apply_multiplier(xi2, f);  // equals -f'' = sin
    for (int j = 0; j < g.size(); ++j) CHECK(d2[j] == doctest::Approx(sinv[j]).epsilon(1e-11));

    const SymbolSpec w = whitham_symbol(1.0 / 3.0);
    const Field scaled = apply_multiplier(w, f);
    const double factor = std::sqrt(4.0 / 3.0 * std::tanh(1.0));
    for (int j = 0; j < g.size(); ++j)
        CHECK(scaled[j] == doctest::Approx(factor * sinv[j]).epsilon(1e-12));
}

TEST_CASE("multiplier aborts on non-finite symbol values") {
    const Grid g(1.0, 16);
    SymbolSpec bad{"bad", [](double xi) { return std::abs(xi) > 10.0 ? std::nan("") : 1.0; },
                   1.0, 1.0, 1.0, 0.0};
    const Field f(g, std::vector<double>(16, 1.0));
    CHECK_THROWS_AS(apply_multiplier(bad, f), NumericalError);
}

TEST_CASE("multiplier linearity and self-adjointness") {
    std::mt19937 rng(13);
    const Grid g(4.0, 96);
    const SymbolSpec w = whitham_symbol(0.5);
    for (int trial = 0; trial < 20; ++trial) {
        const Field f = oracles::random_field(g, rng);
        const Field h = oracles::random_field(g, rng);
        const double a = 0.7, b = -1.3;

        std::vector<double> combo(g.size());
        for (int j = 0; j < g.size(); ++j) combo[j] = a * f[j] + b * h[j];
        const Field lc = apply_multiplier(w, Field(g, combo));
        const Field lf = apply_multiplier(w, f);
        const Field lh = apply_multiplier(w, h);
        for (int j = 0; j < g.size(); ++j)
            CHECK(lc[j] == doctest::Approx(a * lf[j] + b * lh[j]).epsilon(1e-10));

        const double asym = std::abs(inner_product(lf, h) - inner_product(f, lh));
        CHECK(asym < 1e-10 * lp_norm(f, 2.0) * lp_norm(h, 2.0));
    }
}

TEST_CASE("sobolev norm closed forms and monotonicity in the order") {
    const Grid g(5.0, 64);
    const Field c2(g, std::vector<double>(64, 2.0));
    CHECK(sobolev_norm(c2, 0.0) == doctest::Approx(2.0 * std::sqrt(10.0)).epsilon(1e-12));

    const Field zero(g);
    CHECK(sobolev_norm(zero, 1.7) == 0.0);

    const Grid gp(M_PI, 64);
    std::vector<double> sinv(gp.size());
    for (int j = 0; j < gp.size(); ++j) sinv[j] = std::sin(gp.node(j));
    const Field fsin(gp, sinv);
    CHECK(sobolev_norm(fsin, 1.0) ==
          doctest::Approx(std::sqrt(2.0) * lp_norm(fsin, 2.0)).epsilon(1e-12));

    std::mt19937 rng(17);
    const Field f = oracles::random_field(g, rng);
    double prev = sobolev_norm(f, -1.0);
    for (double alpha : {-0.5, 0.0, 0.25, 1.0, 2.0}) {
        const double cur = sobolev_norm(f, alpha);
        CHECK(cur >= prev * (1.0 - 1e-14));
        prev = cur;
    }
}

TEST_CASE("lp norm preconditions and consistency") {
    const Grid g(2.0, 32);
    std::mt19937 rng(19);
    const Field f = oracles::random_field(g, rng);
    CHECK(lp_norm(f, 2.0) == doctest::Approx(sobolev_norm(f, 0.0)).epsilon(1e-12));
    CHECK_THROWS_AS(lp_norm(f, 0.5), ConfigError);
}

TEST_CASE("recenter moves a grid spike to the origin") {
    const Grid g(8.0, 128);
    std::vector<double> v(g.size(), 0.0);
    const int j0 = 37;
    v[j0] = 3.0;
    const Field spike = recenter(Field(g, v));
    const double peak = peak_location(spike);
    CHECK(std::abs(peak) < g.spacing());
}

TEST_CASE("recenter aligns an off-center smooth bump to sub-grid accuracy") {
    const Grid g(20.0, 256);
    std::vector<double> off(g.size()), ref(g.size());
    for (int j = 0; j < g.size(); ++j) {
        const double s0 = 1.0 / std::cosh(g.node(j) - 3.0);
        const double s1 = 1.0 / std::cosh(g.node(j));
        off[j] = s0 * s0;
        ref[j] = s1 * s1;
    }
    const Field centered = recenter(Field(g, off));
    double err = 0.0;
    for (int j = 0; j < g.size(); ++j) err = std::max(err, std::abs(centered[j] - ref[j]));
    CHECK(err < 1e-8);  // limited by the spectral tail of sech^2 on this grid
}

TEST_CASE("padding embeds and truncation restores band-limited fields") {
    std::mt19937 rng(23);
    const Grid g(6.0, 64);
    const Field f = oracles::random_smooth_field(g, rng, 3.0);
    const Spectrum s = transform(f);
    const Spectrum padded = pad_spectrum(s, 2);
    CHECK(padded.size() == 128);

    // same interpolant: fine-grid samples at even indices match the original
    const Field fine = inverse_transform(padded);
    for (int j = 0; j < g.size(); ++j)
        CHECK(fine[2 * j] == doctest::Approx(f[j]).epsilon(1e-11));

    const Spectrum back = truncate_spectrum(padded, g);
    for (int k = -31; k < 32; ++k) CHECK(std::abs(back.at(k) - s.at(k)) < 1e-13);
}

TEST_CASE("resample agrees with direct evaluation on a finer grid") {
    const Grid g(5.0, 64);
    std::vector<double> v(g.size());
    for (int j = 0; j < g.size(); ++j) v[j] = std::cos(M_PI * g.node(j) / 5.0) + 0.3;
    const Field f(g, v);
    const Grid fine(5.0, 96);
    const Field rf = resample(f, fine);
    for (int j = 0; j < fine.size(); ++j) {
        const double expect = std::cos(M_PI * fine.node(j) / 5.0) + 0.3;
        CHECK(rf[j] == doctest::Approx(expect).epsilon(1e-10));
    }
}

TEST_CASE("mass rescaling is exact") {
    std::mt19937 rng(29);
    const Grid g(3.0, 64);
    const Field f = oracles::random_field(g, rng);
    const Field scaled = rescale_mass(f, 0.37);
    CHECK(0.5 * inner_product(scaled, scaled) == doctest::Approx(0.37).epsilon(1e-14));
}
