#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "solwave/analysis.hpp"

using namespace solwave;

namespace {

// Synthetic sweep with the exact closed-form scaling of the quadratic model:
// I = -(3mu)^(5/3)/5 [kappa = 3^(5/3)/5], m(0) - nu = (3 mu)^(2/3).
SweepReport synthetic_kdv_report(int entries, double mu_lo, double mu_hi) {
    SweepReport rep;
    rep.s = rep.s_prime = 2.0;
    rep.p = 1.0;
    rep.m0 = 0.0;
    rep.beta = theoretical_beta(rep.s_prime, rep.p);
    rep.symbol_id = "synthetic";
    for (int i = 0; i < entries; ++i) {
        const double mu = mu_lo * std::pow(mu_hi / mu_lo, double(i) / (entries - 1));
        SweepEntry e;
        e.mu = mu;
        e.energy = -std::pow(3.0 * mu, 5.0 / 3.0) / 5.0;
        e.speed_defect = std::pow(3.0 * mu, 2.0 / 3.0);
        e.nu = -e.speed_defect;
        e.ldisp = -e.energy / 3.0;          // L = |E|/3 for this family
        e.np = 4.0 * e.ldisp;               // N = 4 L
        e.nr = 0.0;
        e.norm_l2p = std::pow(3.0 * e.np, 1.0 / 3.0);  // N = ||u||_3^3 / 3
        e.norm_hs2 = std::sqrt(2.0 * mu);
        e.norm_h1s = std::sqrt(2.0 * mu);
        e.converged = true;
        e.tail_ok = true;
        rep.entries.push_back(e);
    }
    return rep;
}

}  // namespace

TEST_CASE("scaling fit recovers exact closed-form exponents") {
    const SweepReport rep = synthetic_kdv_report(8, 1e-4, 1e-3);
    const FittedExponents fit = fit_scaling(rep);
    CHECK(fit.energy_slope == doctest::Approx(5.0 / 3.0).epsilon(1e-12));
    CHECK(fit.speed_slope == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(fit.kappa == doctest::Approx(std::pow(3.0, 5.0 / 3.0) / 5.0).epsilon(1e-12));
    CHECK(fit.r2_energy == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.r2_speed == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.entries_used == 8);
}

TEST_CASE("scaling fit preconditions") {
    CHECK_THROWS_AS(fit_scaling(synthetic_kdv_report(1, 1e-3, 1e-3)), ConfigError);
    CHECK_THROWS_AS(fit_scaling(synthetic_kdv_report(4, 1e-4, 1e-3)), ConfigError);
    CHECK_THROWS_AS(fit_scaling(synthetic_kdv_report(8, 1e-3, 5e-3)), ConfigError);  // < decade

    // unconverged entries are excluded
    SweepReport rep = synthetic_kdv_report(6, 1e-4, 1e-3);
    for (auto& e : rep.entries) e.converged = false;
    CHECK_THROWS_AS(fit_scaling(rep), ConfigError);
}

TEST_CASE("near-minimizer ratios are exactly flat on scale-invariant data") {
    const SweepReport rep = synthetic_kdv_report(8, 1e-4, 1e-3);
    const RatioTable table = near_minimizer_ratios(rep);
    REQUIRE(table.rows.size() == 8);
    CHECK(table.ldisp_spread == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(table.n_spread == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(table.lp_spread == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(table.hs_spread == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(table.pass);

    // unconverged entries drop out of the table
    SweepReport partial = rep;
    partial.entries[3].converged = false;
    CHECK(near_minimizer_ratios(partial).rows.size() == 7);
}

TEST_CASE("remainder trend detects the predicted decay and skips empty models") {
    SweepReport rep = synthetic_kdv_report(8, 1e-4, 1e-3);
    rep.r = 2.0;
    for (auto& e : rep.entries) e.nr = 0.01 * std::pow(e.mu, 1.0 + rep.beta + 0.5);
    const RemainderTrend trend = remainder_smallness(rep);
    CHECK_FALSE(trend.skipped);
    CHECK(trend.spearman == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(trend.slope == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(trend.decreasing_toward_zero);

    const RemainderTrend none = remainder_smallness(synthetic_kdv_report(8, 1e-4, 1e-3));
    CHECK(none.skipped);
}

TEST_CASE("subadditivity margins match the closed form") {
    const SweepReport rep = synthetic_kdv_report(8, 1e-4, 1e-3);
    const auto pairs = sample_subadditivity_pairs(rep, 20, 2024);
    const SubadditivityTable table = subadditivity_check(rep, pairs);
    CHECK(table.rows.size() == 20);
    CHECK(table.skipped == 0);
    CHECK(table.all_strict);

    const double kappa = std::pow(3.0, 5.0 / 3.0) / 5.0;
    for (const SubadditivityRow& row : table.rows) {
        // log(-I) is linear in log mu, so the monotone cubic is exact here
        const double exact = -kappa * (std::pow(row.mu1, 5.0 / 3.0) +
                                       std::pow(row.mu2, 5.0 / 3.0) -
                                       std::pow(row.mu1 + row.mu2, 5.0 / 3.0));
        CHECK(row.margin == doctest::Approx(exact).epsilon(1e-10));
        CHECK(row.margin > 0.0);
    }

    // out-of-range and degenerate pairs are skipped
    const SubadditivityTable skipped =
        subadditivity_check(rep, {{0.0, 1e-4}, {1e-3, 1e-3}, {2e-4, 3e-4}});
    CHECK(skipped.skipped == 2);
    CHECK(skipped.rows.size() == 1);
}

TEST_CASE("congestion profile: partition of unity and single-cell capture") {
    const Grid g(16.0, 512);

    // bump supported in |x| <= 1/4, inside the central window's plateau
    std::vector<double> v(g.size(), 0.0);
    for (int j = 0; j < g.size(); ++j) {
        const double x = g.node(j);
        if (std::abs(x) < 0.25) v[j] = std::cos(2.0 * M_PI * x) + 1.0;
    }
    const Field u(g, v);
    const CongestionProfile prof = congestion_profile(u, 1.0);
    CHECK(prof.partition_error < 1e-12);
    CHECK(prof.max_value >= lp_norm(u, 3.0) * (1.0 - 1e-12));
}

TEST_CASE("congestion: windowed mass stays bounded below across a sweep") {
    SolveConfig cfg;
    cfg.symbol = fkdv_symbol(2.0);
    cfg.nonlinearity = make_nonlinearity(NonlinearityForm::A1, 3.0, 1.0);
    cfg.modes = 1024;
    const double beta = theoretical_beta(cfg.symbol.s_prime, cfg.nonlinearity.p);
    double lo = 1e300, hi = 0.0;
    for (double mu : {1e-3, 1e-2, 1e-1}) {
        cfg.mu = mu;
        const SolveResult r = solve(cfg);
        REQUIRE(r.converged);
        const CongestionProfile prof = congestion_profile(r.u, cfg.nonlinearity.p);
        CHECK(prof.partition_error < 1e-12);
        const double ratio = prof.max_value / std::pow(mu, beta / cfg.nonlinearity.p);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    CHECK(lo > 0.0);
    CHECK(hi / lo < 5.0);  // no degeneration over two decades
}

TEST_CASE("commutator estimates: zero for constant symbols, decaying for whitham") {
    CommutatorOptions opts;
    opts.grid = Grid(128.0, 1024);
    opts.seed = 99;
    opts.iterations = 30;

    SymbolSpec flat{"flat", [](double) { return 2.0; }, 1.0, 1.0, 2.0, 0.0};
    const auto zero = commutator_decay(flat, "gaussian", {4.0, 16.0}, 3, opts);
    for (const auto& [r, v] : zero) CHECK(v < 1e-12);

    const auto est = commutator_decay(whitham_symbol(0.5), "gaussian", {4.0, 8.0, 16.0}, 6, opts);
    CHECK(est[0].second > est[1].second);
    CHECK(est[1].second > est[2].second);
    // near-Lipschitz symbols: doubling r roughly halves the norm
    const double ratio = est[1].second / est[0].second;
    CHECK(ratio > 0.35);
    CHECK(ratio < 0.7);

    CHECK_THROWS_AS(commutator_decay(flat, "unknown-window", {4.0}, 1, opts), ConfigError);
}

TEST_CASE("regularity: bootstrap fixed point holds on a converged profile") {
    SolveConfig cfg;
    cfg.mu = 0.05;
    cfg.symbol = fkdv_symbol(2.0);
    cfg.nonlinearity = make_nonlinearity(NonlinearityForm::A1, 3.0, 1.0);
    cfg.modes = 1024;
    const SolveResult r = solve(cfg);
    REQUIRE(r.converged);

    const RegularityReport rep = regularity_report(r, cfg.symbol, cfg.nonlinearity);
    CHECK(rep.lambda_invertible);
    CHECK(rep.ok);
    CHECK(rep.fixed_point_error < 10.0 * r.residual);
    CHECK(std::isfinite(rep.h1s_ratio));
    CHECK(rep.h1s_ratio > 0.0);
}

TEST_CASE("regularity: zero field satisfies the identity trivially") {
    SolveResult fake{Field(Grid(10.0, 64))};
    fake.mu = 1.0;
    fake.nu = -0.5;
    fake.residual = 1e-10;
    const RegularityReport rep =
        regularity_report(fake, fkdv_symbol(2.0), make_nonlinearity(NonlinearityForm::A1, 3.0, 1.0));
    CHECK(rep.lambda_invertible);
    CHECK(rep.fixed_point_error == 0.0);
}

TEST_CASE("regularity: wave speeds past one leave the shifted operator singular") {
    SolveResult fake{Field(Grid(10.0, 64))};
    fake.mu = 1.0;
    fake.nu = 2.0;  // 1 - nu < 0
    const RegularityReport rep =
        regularity_report(fake, fkdv_symbol(2.0), make_nonlinearity(NonlinearityForm::A1, 3.0, 1.0));
    CHECK_FALSE(rep.lambda_invertible);
    CHECK_FALSE(rep.ok);
}
