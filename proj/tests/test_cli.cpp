// End-to-end tests of the dskg binary: exit codes, artifact layout, header
// stability, determinism, and config diagnostics. The binary path arrives
// in DSKG_BIN (set by the build); each case runs in its own scratch dir.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string binary_path() {
    const char* p = std::getenv("DSKG_BIN");
    REQUIRE_MESSAGE(p != nullptr, "DSKG_BIN must point at the dskg binary");
    return p;
}

fs::path scratch_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / "dskg_cli_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "missing file: " << p.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct RunResult {
    int exit_code = -1;
    fs::path out;
    fs::path stderr_file;

    json summary() const { return json::parse(slurp(out / "summary.json")); }
    std::string err() const { return slurp(stderr_file); }
};

RunResult run_dskg(const std::string& name, const std::string& subcommand,
                   const std::string& config_text,
                   const std::string& extra_flags = "") {
    fs::path dir = scratch_dir(name);
    fs::path cfg = dir / "config.json";
    {
        std::ofstream(cfg) << config_text;
    }
    RunResult r;
    r.out = dir / "out";
    r.stderr_file = dir / "stderr.txt";
    std::string cmd = binary_path() + " " + subcommand + " --config " +
                      cfg.string() + " --out " + r.out.string() + " " +
                      extra_flags + " > /dev/null 2> " +
                      r.stderr_file.string();
    int rc = std::system(cmd.c_str());
    r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return r;
}

const char* kLinearConfig = R"({
  "mass": {"n": 3.0, "m": 1.4142135623730951},
  "data": {"psi0": {"preset": "gaussian-bump", "amplitude": 1.0}},
  "grid": {"points": 128},
  "time": {"T": 6.0, "samples": 13}
})";

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("solve-linear writes the three artifacts and reports the rate") {
    auto r = run_dskg("linear", "solve-linear", kLinearConfig);
    CHECK(r.exit_code == 0);
    CHECK(fs::exists(r.out / "series.csv"));
    CHECK(fs::exists(r.out / "summary.json"));
    CHECK(fs::exists(r.out / "plot.gp"));

    json s = r.summary();
    CHECK(s["pass"] == true);
    CHECK(s["mass_regime"] == "critical");
    CHECK(s["gamma_source"] == "auto");
    CHECK(s["expected_gamma"].get<double>() == doctest::Approx(1.0));
    CHECK(s["config"]["grid"]["points"] == 128);
    CHECK(s["config"]["norm"]["gamma"] == "auto");

    // fixed header, then strictly increasing sample times
    std::istringstream csv(slurp(r.out / "series.csv"));
    std::string line;
    REQUIRE(std::getline(csv, line));
    CHECK(line == "t,h_s_norm,weighted_norm");
    double prev = -1.0;
    int rows = 0;
    while (std::getline(csv, line)) {
        double t = std::stod(line.substr(0, line.find(',')));
        CHECK(t > prev);
        prev = t;
        ++rows;
    }
    CHECK(rows == 13);

    std::string gp = slurp(r.out / "plot.gp");
    CHECK(gp.find("series.csv") != std::string::npos);
    CHECK(gp.find("logscale y") != std::string::npos);
}

TEST_CASE("identical config and seed give byte-identical artifacts") {
    auto a = run_dskg("det_a", "solve-linear", kLinearConfig);
    auto b = run_dskg("det_b", "solve-linear", kLinearConfig);
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    CHECK(slurp(a.out / "summary.json") == slurp(b.out / "summary.json"));
    CHECK(slurp(a.out / "series.csv") == slurp(b.out / "series.csv"));
}

TEST_CASE("verify-huygens: critical mass passes, off-critical fails with 2") {
    auto pass = run_dskg("huy_pass", "verify-huygens",
                         R"({"mass": {"n": 3.0, "m": 1.4142135623730951}})");
    CHECK(pass.exit_code == 0);
    json sp = pass.summary();
    CHECK(sp["pass"] == true);
    CHECK(sp["tail_ratio"].get<double>() < 1e-6);

    auto fail = run_dskg("huy_fail", "verify-huygens",
                         R"({"mass": {"n": 3.0, "m": 1.0}})");
    CHECK(fail.exit_code == 2);
    json sf = fail.summary();
    CHECK(sf["pass"] == false);
    CHECK(sf["tail_ratio"].get<double>() > 1e-3);
}

TEST_CASE("missing required field names the dotted path and exits 1") {
    auto r = run_dskg("missing", "solve-linear",
                      R"({"mass": {"n": 3.0},
                          "data": {"psi0": {"preset": "gaussian-bump"}}})");
    CHECK(r.exit_code == 1);
    CHECK(r.err().find("mass.m") != std::string::npos);
    CHECK_FALSE(fs::exists(r.out / "summary.json"));
}

TEST_CASE("config diagnostics: grid, preset, and JSON syntax errors") {
    auto npow = run_dskg("npow", "solve-linear",
                         R"({"mass": {"n": 3.0, "m": 1.0},
                             "grid": {"points": 100},
                             "data": {"psi0": {"preset": "gaussian-bump"}}})");
    CHECK(npow.exit_code == 1);
    CHECK(npow.err().find("power of two") != std::string::npos);

    auto preset = run_dskg("preset", "solve-linear",
                           R"({"mass": {"n": 3.0, "m": 1.0},
                               "data": {"psi0": {"preset": "sawtooth"}}})");
    CHECK(preset.exit_code == 1);
    CHECK(preset.err().find("sawtooth") != std::string::npos);

    auto syntax = run_dskg("syntax", "solve-linear", "{not json");
    CHECK(syntax.exit_code == 1);
    CHECK(syntax.err().find("config error") != std::string::npos);

    auto nodata = run_dskg("nodata", "solve-linear",
                           R"({"mass": {"n": 3.0, "m": 1.0}})");
    CHECK(nodata.exit_code == 1);
    CHECK(nodata.err().find("psi0/psi1") != std::string::npos);
}

TEST_CASE("an inadmissible weight is a warning, not an error") {
    auto r = run_dskg("warn", "solve-semilinear",
                      R"({"mass": {"n": 3.0, "m": 1.4142135623730951},
                          "data": {"psi1": {"preset": "gaussian-bump",
                                            "amplitude": 0.01}},
                          "norm": {"gamma": 0.9},
                          "grid": {"points": 64},
                          "time": {"T": 4.0, "samples": 9}})");
    CHECK(r.err().find("admissible decay bound") != std::string::npos);
    json s = r.summary();
    REQUIRE(s["warnings"].size() == 1);
    CHECK(s["gamma"].get<double>() == doctest::Approx(0.9));
}

TEST_CASE("verify-kernels defaults sweep five masses at order two") {
    auto r = run_dskg("kern", "verify-kernels", "{}");
    CHECK(r.exit_code == 0);
    json s = r.summary();
    CHECK(s["pass"] == true);
    REQUIRE(s["kernels"].size() == 5);
    for (const auto& rec : s["kernels"])
        CHECK(rec["order"].get<double>() == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("fit-decay recovers the small-mass rate from defaults") {
    auto r = run_dskg("fit", "fit-decay",
                      R"({"mass": {"n": 3.0, "m": 1.0}})");
    CHECK(r.exit_code == 0);
    json s = r.summary();
    CHECK(s["pass"] == true);
    CHECK(s["data"] == "velocity");
    CHECK(s["fitted_gamma"].get<double>() ==
          doctest::Approx(s["expected_gamma"].get<double>()).epsilon(0.05));
}

TEST_CASE("self-check reruns at doubled resolution and records the drift") {
    auto r = run_dskg("selfcheck", "solve-linear", kLinearConfig,
                      "--self-check");
    CHECK(r.exit_code == 0);
    json s = r.summary();
    REQUIRE(s.contains("self_check"));
    CHECK(s["self_check"]["pass"] == true);
    CHECK(s["self_check"]["quadrature_delta"].get<double>() <= 1e-6);
    CHECK(s["self_check"]["grid_delta"].get<double>() <= 1e-4);
}

TEST_SUITE_END();
