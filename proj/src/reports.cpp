#include "solwave/reports.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

namespace solwave {
namespace {

using ordered = nlohmann::ordered_json;

ordered breakdown_to_json(const EnergyBreakdown& b) {
    return ordered{{"q", b.q}, {"ldisp", b.ldisp}, {"np", b.np}, {"nr", b.nr}, {"e", b.e}};
}

ordered solve_result_to_json(const SolveResult& r, std::uint64_t seed) {
    ordered j;
    j["mu"] = r.mu;
    j["nu"] = r.nu;
    j["nu_original"] = r.nu_original;
    j["breakdown"] = breakdown_to_json(r.breakdown);
    j["residual"] = r.residual;
    j["residual_l2"] = r.residual_l2;
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    j["stop_reason"] = r.stop_reason;
    j["norms"] = ordered{{"hs2", r.norm_hs2},
                         {"h1s", r.norm_h1s},
                         {"l2p", r.norm_l2p},
                         {"linf", r.norm_linf}};
    j["domain"] = ordered{{"half_length", r.half_length},
                          {"modes", r.modes},
                          {"b_star", r.b_star},
                          {"t_star", r.t_star},
                          {"tail_mass", r.tail},
                          {"tail_ok", r.tail_ok}};
    j["seed"] = seed;
    return j;
}

}  // namespace

std::string breakdown_json(const EnergyBreakdown& b) { return breakdown_to_json(b).dump(2); }

std::string solve_result_json(const SolveResult& r, std::uint64_t seed) {
    return solve_result_to_json(r, seed).dump(2);
}

std::string sweep_report_json(const SweepReport& r, std::uint64_t seed) {
    ordered j;
    j["model"] = ordered{{"symbol", r.symbol_id}, {"s", r.s},      {"s_prime", r.s_prime},
                         {"p", r.p},              {"r", r.r},      {"m0", r.m0},
                         {"beta", r.beta}};
    j["fitted"] = ordered{{"energy_slope", r.fitted.energy_slope},
                          {"kappa", r.fitted.kappa},
                          {"r2_energy", r.fitted.r2_energy},
                          {"speed_slope", r.fitted.speed_slope},
                          {"r2_speed", r.fitted.r2_speed},
                          {"entries_used", r.fitted.entries_used}};
    ordered entries = ordered::array();
    for (const SweepEntry& e : r.entries) {
        entries.push_back(ordered{{"mu", e.mu},
                                  {"energy", e.energy},
                                  {"nu", e.nu},
                                  {"speed_defect", e.speed_defect},
                                  {"q", e.q},
                                  {"ldisp", e.ldisp},
                                  {"np", e.np},
                                  {"nr", e.nr},
                                  {"norm_hs2", e.norm_hs2},
                                  {"norm_h1s", e.norm_h1s},
                                  {"norm_l2p", e.norm_l2p},
                                  {"norm_linf", e.norm_linf},
                                  {"residual", e.residual},
                                  {"tail", e.tail},
                                  {"iterations", e.iterations},
                                  {"converged", e.converged},
                                  {"tail_ok", e.tail_ok},
                                  {"note", e.note}});
    }
    j["entries"] = std::move(entries);
    j["branch_change_warning"] = r.branch_change_warning;
    j["seed"] = seed;
    return j.dump(2);
}

std::string growth_report_json(const GrowthReport& r) {
    auto band = [](const GrowthBandReport& b) {
        return ordered{{"ratio_min", b.ratio_min},
                       {"ratio_max", b.ratio_max},
                       {"ok", b.ok},
                       {"witness_xi", b.witness_xi},
                       {"note", b.note}};
    };
    ordered j;
    j["low_band"] = band(r.low);
    j["high_band"] = band(r.high);
    j["exponents_ok"] = r.exponents_ok;
    j["exponent_note"] = r.exponent_note;
    j["passed"] = r.passed;
    return j.dump(2);
}

std::string modulus_report_json(const ModulusReport& r) {
    ordered points = ordered::array();
    for (const auto& [t, w] : r.points) points.push_back(ordered{{"offset", t}, {"omega", w}});
    ordered j;
    j["points"] = std::move(points);
    j["vanishing"] = r.vanishing;
    return j.dump(2);
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write to '" + path + "'");
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
}

void write_profile_csv(const Field& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write to '" + path + "'");
    out << "x,u\n";
    char line[80];
    for (int j = 0; j < f.size(); ++j) {
        std::snprintf(line, sizeof(line), "%.17g,%.17g\n", f.grid().node(j), f[j]);
        out << line;
    }
}

void write_sweep_csv(const SweepReport& r, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write to '" + path + "'");
    out << "mu,energy,nu,speed_defect,q,ldisp,np,nr,norm_hs2,norm_h1s,norm_l2p,norm_linf,"
           "residual,tail,iterations,converged\n";
    char line[512];
    for (const SweepEntry& e : r.entries) {
        std::snprintf(line, sizeof(line),
                      "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                      "%.17g,%.17g,%d,%d\n",
                      e.mu, e.energy, e.nu, e.speed_defect, e.q, e.ldisp, e.np, e.nr, e.norm_hs2,
                      e.norm_h1s, e.norm_l2p, e.norm_linf, e.residual, e.tail, e.iterations,
                      e.converged ? 1 : 0);
        out << line;
    }
}

void write_scaling_csv(const SweepReport& r, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write to '" + path + "'");
    out << "log10_mu,log10_neg_energy,log10_speed_defect\n";
    char line[160];
    for (const SweepEntry& e : r.entries) {
        if (!e.converged || !(e.energy < 0.0) || !(e.speed_defect > 0.0)) continue;
        std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g\n", std::log10(e.mu),
                      std::log10(-e.energy), std::log10(e.speed_defect));
        out << line;
    }
}

void write_ratios_csv(const RatioTable& t, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write to '" + path + "'");
    out << "mu,ldisp_ratio,n_ratio,lp_ratio,hs_ratio\n";
    char line[200];
    for (const RatioRow& row : t.rows) {
        std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g,%.17g\n", row.mu,
                      row.ldisp_ratio, row.n_ratio, row.lp_ratio, row.hs_ratio);
        out << line;
    }
}

void write_subadditivity_csv(const SubadditivityTable& t, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write to '" + path + "'");
    out << "mu1,mu2,i1,i2,i_sum,margin\n";
    char line[256];
    for (const SubadditivityRow& row : t.rows) {
        std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", row.mu1,
                      row.mu2, row.i1, row.i2, row.i_sum, row.margin);
        out << line;
    }
}

void write_remainder_csv(const RemainderTrend& t, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write to '" + path + "'");
    out << "mu,remainder_ratio\n";
    char line[96];
    for (const auto& [mu, ratio] : t.ratios) {
        std::snprintf(line, sizeof(line), "%.17g,%.17g\n", mu, ratio);
        out << line;
    }
}

}  // namespace solwave
