#pragma once

#include <string>

#include "solwave/analysis.hpp"
#include "solwave/evolution.hpp"
#include "solwave/minimizer.hpp"
#include "solwave/symbol.hpp"

namespace solwave {

/// Deterministic JSON (ordered keys, no timestamps; run metadata that may
/// vary goes to a sidecar file).
std::string breakdown_json(const EnergyBreakdown& b);
std::string solve_result_json(const SolveResult& r, std::uint64_t seed);
std::string sweep_report_json(const SweepReport& r, std::uint64_t seed);
std::string growth_report_json(const GrowthReport& r);
std::string modulus_report_json(const ModulusReport& r);

/// Two-column CSV x,u(x).
void write_profile_csv(const Field& f, const std::string& path);

/// Multi-column per-mu sweep table.
void write_sweep_csv(const SweepReport& r, const std::string& path);

/// Plot-ready data: log10(mu) against log10(-I_mu) and log10(m0 - nu).
void write_scaling_csv(const SweepReport& r, const std::string& path);

/// Per-check tables for plotting.
void write_ratios_csv(const RatioTable& t, const std::string& path);
void write_subadditivity_csv(const SubadditivityTable& t, const std::string& path);
void write_remainder_csv(const RemainderTrend& t, const std::string& path);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace solwave
