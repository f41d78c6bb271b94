#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "solwave/reports.hpp"
#include "solwave/run_config.hpp"

using namespace solwave;
namespace fs = std::filesystem;

namespace {

const char* kWhithamConfig = R"({
  "model": {
    "symbol": {"name": "whitham", "T": 0.5},
    "nonlinearity": {"form": "a1", "c": 1.0, "p": 1.0}
  },
  "numerics": {"modes": 512, "max_iters": 4000},
  "task": {"type": "solve", "mu": 0.01},
  "output": {"directory": "out"}
})";

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("valid config parses with defaults filled in") {
    const RunConfig cfg = parse_run_config(kWhithamConfig);
    CHECK(cfg.symbol.id == "whitham");
    CHECK(cfg.symbol.m0 == 1.0);
    CHECK(cfg.nonlinearity.p == 1.0);
    CHECK(cfg.normalize);
    CHECK(cfg.modes == 512);
    CHECK(cfg.max_iters == 4000);
    CHECK(cfg.domain_factor == 40.0);  // default
    CHECK(cfg.task.type == TaskType::Solve);
    CHECK(cfg.task.mu == 0.01);

    const SolveConfig sc = cfg.solve_config(cfg.task.mu);
    CHECK(sc.symbol.m0 == 0.0);          // normalized frame
    CHECK(sc.symbol.shift == 1.0);
    CHECK(sc.nonlinearity.cutoff_applied);
    CHECK(sc.modes == 512);
}

TEST_CASE("unknown keys are rejected with their path") {
    std::string bad = kWhithamConfig;
    bad.replace(bad.find("\"modes\""), 7, "\"modez\"");
    try {
        parse_run_config(bad);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("numerics.modez") != std::string::npos);
    }
}

TEST_CASE("malformed json reports a parse error") {
    CHECK_THROWS_AS(parse_run_config("{ not json"), ConfigError);
    CHECK_THROWS_AS(parse_run_config("{}"), ConfigError);  // missing model
}

TEST_CASE("model validation happens at parse time") {
    // fkdv below the solitary-wave threshold
    CHECK_THROWS_AS(parse_run_config(R"({
      "model": {"symbol": {"name": "fkdv", "alpha": 0.3},
                 "nonlinearity": {"form": "a1", "c": 1.0, "p": 1.0}},
      "task": {"type": "check"}})"),
                    ConfigError);
    // form (A2) with negative coefficient is outside the solvable regime
    CHECK_THROWS_AS(parse_run_config(R"({
      "model": {"symbol": {"name": "whitham", "T": 0.5},
                 "nonlinearity": {"form": "a2", "c": -1.0, "p": 1.0}},
      "task": {"type": "check"}})"),
                    ConfigError);
    // weak surface tension requires the override
    CHECK_THROWS_AS(parse_run_config(R"({
      "model": {"symbol": {"name": "whitham", "T": 0.2},
                 "nonlinearity": {"form": "a1", "c": 1.0, "p": 1.0}},
      "task": {"type": "check"}})"),
                    ConfigError);
    // invalid task values
    CHECK_THROWS_AS(parse_run_config(R"({
      "model": {"symbol": {"name": "whitham", "T": 0.5},
                 "nonlinearity": {"form": "a1", "c": 1.0, "p": 1.0}},
      "task": {"type": "solve", "mu": -0.5}})"),
                    ConfigError);
    CHECK_THROWS_AS(parse_run_config(R"({
      "model": {"symbol": {"name": "whitham", "T": 0.5},
                 "nonlinearity": {"form": "a1", "c": 1.0, "p": 1.0}},
      "task": {"type": "warp"}})"),
                    ConfigError);
}

TEST_CASE("tabulated symbols load from two-column files") {
    const fs::path dir = fs::temp_directory_path() / "solwave_test_table";
    fs::create_directories(dir);
    {
        std::ofstream table(dir / "symbol.txt");
        const SymbolSpec w = whitham_symbol(0.5);
        for (int i = 0; i <= 400; ++i) {
            const double xi = 50.0 * i / 400.0;
            table << xi << " " << w.eval(xi) << "\n";
        }
    }
    const std::string cfg_text = std::string(R"({
      "model": {"symbol": {"name": "tabulated", "file": ")") +
                                 (dir / "symbol.txt").string() + R"(", "s": 0.5, "s_prime": 2.0},
                 "nonlinearity": {"form": "a1", "c": 1.0, "p": 1.0}},
      "task": {"type": "check"}})";
    const RunConfig cfg = parse_run_config(cfg_text);
    CHECK(cfg.symbol.m0 == doctest::Approx(1.0).epsilon(1e-12));
    // spline interpolation of a table with spacing 1/8
    CHECK(cfg.symbol.eval(2.0) ==
          doctest::Approx(whitham_symbol(0.5).eval(2.0)).epsilon(1e-5));
    CHECK(cfg.symbol.eval(-2.0) == cfg.symbol.eval(2.0));
    fs::remove_all(dir);
}

TEST_CASE("energy breakdown serializes with its documented keys") {
    EnergyBreakdown b;
    b.q = 1.0;
    b.ldisp = 2.0;
    b.np = 3.0;
    b.nr = 4.0;
    b.e = -5.0;
    const std::string j = breakdown_json(b);
    for (const char* key : {"\"q\"", "\"ldisp\"", "\"np\"", "\"nr\"", "\"e\""})
        CHECK(j.find(key) != std::string::npos);
}

TEST_CASE("effective config echo is deterministic") {
    const RunConfig a = parse_run_config(kWhithamConfig);
    const RunConfig b = parse_run_config(kWhithamConfig);
    CHECK(effective_config_json(a) == effective_config_json(b));
    CHECK(effective_config_json(a).find("\"domain_factor\": 40.0") != std::string::npos);
}

TEST_CASE("csv writers produce well-formed tables") {
    const fs::path dir = fs::temp_directory_path() / "solwave_test_csv";
    fs::create_directories(dir);

    const Grid g(2.0, 16);
    std::vector<double> v(16, 1.0);
    write_profile_csv(Field(g, v), (dir / "profile.csv").string());
    const std::string text = slurp(dir / "profile.csv");
    CHECK(text.rfind("x,u\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 17);  // header + 16 rows
    fs::remove_all(dir);
}

// The remaining cases exercise the installed binary; the build system points
// SOLWAVE_BIN at it.
TEST_CASE("binary: exit codes and reproducible outputs") {
    const char* bin = std::getenv("SOLWAVE_BIN");
    if (!bin) return;  // running outside the build harness

    const fs::path dir = fs::temp_directory_path() / "solwave_test_cli";
    fs::remove_all(dir);
    fs::create_directories(dir);
    auto run = [&](const std::string& args) {
        const std::string cmd = std::string(bin) + " " + args + " > " +
                                (dir / "stdout.txt").string() + " 2> " +
                                (dir / "stderr.txt").string();
        const int status = std::system(cmd.c_str());
        return WEXITSTATUS(status);
    };

    // configuration errors exit with 2
    {
        std::ofstream(dir / "bad.json") << "{ not json";
        CHECK(run("check --config " + (dir / "bad.json").string()) == 2);
        std::ofstream(dir / "fkdv_low.json") << R"({
          "model": {"symbol": {"name": "fkdv", "alpha": 0.3},
                     "nonlinearity": {"form": "a1", "c": 1.0, "p": 1.0}},
          "task": {"type": "check"}})";
        CHECK(run("check --config " + (dir / "fkdv_low.json").string()) == 2);
    }

    // a passing assumption check prints the scaling exponent and exits 0
    {
        std::ofstream(dir / "whitham.json") << R"({
          "model": {"symbol": {"name": "whitham", "T": 0.5},
                     "nonlinearity": {"form": "a1", "c": 1.0, "p": 1.0}},
          "task": {"type": "check"},
          "output": {"directory": ")" << (dir / "out_check").string() << R"("}})";
        CHECK(run("check --config " + (dir / "whitham.json").string()) == 0);
        const std::string text = slurp(dir / "stdout.txt");
        CHECK(text.find("beta") != std::string::npos);
        CHECK(text.find("0.666") != std::string::npos);
        CHECK(fs::exists(dir / "out_check" / "check_report.json"));
    }

    // solve: exit 0, writes profile + result; identical reruns are byte-identical
    {
        std::ofstream(dir / "solve.json") << R"({
          "model": {"symbol": {"name": "fkdv", "alpha": 2.0},
                     "nonlinearity": {"form": "a1", "c": 3.0, "p": 1.0}},
          "numerics": {"modes": 512},
          "task": {"type": "solve", "mu": 0.05},
          "output": {"directory": ")" << (dir / "out_a").string() << R"("}})";
        CHECK(run("solve --config " + (dir / "solve.json").string()) == 0);
        CHECK(run("solve --config " + (dir / "solve.json").string() + " --out " +
                  (dir / "out_b").string()) == 0);
        CHECK(slurp(dir / "out_a" / "solve_result.json") ==
              slurp(dir / "out_b" / "solve_result.json"));
        CHECK(slurp(dir / "out_a" / "profile.csv") == slurp(dir / "out_b" / "profile.csv"));
        CHECK(fs::exists(dir / "out_a" / "effective_config.json"));
    }

    // a starved iteration budget fails with exit 1 unless explicitly allowed
    {
        std::ofstream(dir / "starved.json") << R"({
          "model": {"symbol": {"name": "fkdv", "alpha": 2.0},
                     "nonlinearity": {"form": "a1", "c": 3.0, "p": 1.0}},
          "numerics": {"modes": 512, "max_iters": 3},
          "task": {"type": "solve", "mu": 0.05},
          "output": {"directory": ")" << (dir / "out_starved").string() << R"("}})";
        CHECK(run("solve --config " + (dir / "starved.json").string()) == 1);
        CHECK(run("solve --config " + (dir / "starved.json").string() +
                  " --allow-unconverged") == 0);
    }

    // sweep and evolve drivers produce their reports
    {
        std::ofstream(dir / "sweep.json") << R"({
          "model": {"symbol": {"name": "fkdv", "alpha": 2.0},
                     "nonlinearity": {"form": "a1", "c": 3.0, "p": 1.0}},
          "numerics": {"modes": 512},
          "task": {"type": "sweep", "mu_list": [0.02, 0.05]},
          "output": {"directory": ")" << (dir / "out_sweep").string() << R"("}})";
        CHECK(run("sweep --config " + (dir / "sweep.json").string()) == 0);
        CHECK(fs::exists(dir / "out_sweep" / "sweep_report.json"));
        CHECK(fs::exists(dir / "out_sweep" / "verification_report.json"));
        CHECK(fs::exists(dir / "out_sweep" / "sweep.csv"));
        CHECK(fs::exists(dir / "out_sweep" / "scaling.csv"));

        std::ofstream(dir / "evolve.json") << R"({
          "model": {"symbol": {"name": "fkdv", "alpha": 2.0},
                     "nonlinearity": {"form": "a1", "c": 3.0, "p": 1.0}},
          "numerics": {"modes": 512},
          "task": {"type": "evolve", "mu": 0.05, "t_end": 5.0, "dt": 0.02, "snapshots": 4},
          "output": {"directory": ")" << (dir / "out_evolve").string() << R"("}})";
        CHECK(run("evolve --config " + (dir / "evolve.json").string()) == 0);
        CHECK(fs::exists(dir / "out_evolve" / "evolve_summary.json"));
        CHECK(fs::exists(dir / "out_evolve" / "snapshot_004.csv"));
    }

    fs::remove_all(dir);
}
