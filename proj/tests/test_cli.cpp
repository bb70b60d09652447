#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        std::mt19937_64 rng(std::random_device{}());
        path = fs::temp_directory_path() / ("qotto_cli_" + std::to_string(rng()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

int run(const std::string& args, const fs::path& cwd, const std::string& stderr_file = {}) {
    std::string cmd = "cd " + cwd.string() + " && " + QOTTO_CLI_PATH + " " + args;
    cmd += stderr_file.empty() ? " 2>/dev/null" : " 2>" + stderr_file;
    cmd += " >/dev/null";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const std::string kConfigs = QOTTO_CONFIG_DIR;

}  // namespace

TEST_CASE("cli: missing arguments fail") {
    TempDir tmp;
    CHECK(run("", tmp.path) != 0);
    CHECK(run("cycle", tmp.path) != 0);
    CHECK(run("cycle --config /does/not/exist.json", tmp.path) != 0);
}

TEST_CASE("cli: bundled example configs run to completion") {
    TempDir tmp;
    CHECK(run("stroke --config " + kConfigs + "/stroke.json", tmp.path) == 0);
    CHECK(fs::exists(tmp.file("stroke.csv")));
    CHECK(run("sta-design --config " + kConfigs + "/sta_design.json", tmp.path) == 0);
    CHECK(fs::exists(tmp.file("sta_protocol.csv")));
    CHECK(fs::exists(tmp.file("sta_verification.json")));
    CHECK(run("cycle --config " + kConfigs + "/cycle.json", tmp.path) == 0);
    CHECK(fs::exists(tmp.file("cycle_report.json")));
    CHECK(run("cd --config " + kConfigs + "/cd.json", tmp.path) == 0);
    CHECK(fs::exists(tmp.file("cd_work.csv")));
    CHECK(fs::exists(tmp.file("cd_metrics.csv")));
    CHECK(fs::exists(tmp.file("cd_summary.json")));
}

TEST_CASE("cli: --out overrides the primary output path") {
    TempDir tmp;
    CHECK(run("stroke --config " + kConfigs + "/stroke.json --out " + tmp.file("custom.csv"),
              tmp.path) == 0);
    CHECK(fs::exists(tmp.file("custom.csv")));
    CHECK(!fs::exists(tmp.file("stroke.csv")));
}

TEST_CASE("cli: cycle csv header carries the full report schema") {
    TempDir tmp;
    std::ofstream cfg(tmp.file("cycle.json"));
    cfg << R"({
        "scenario": "cycle",
        "omega1": 1.0, "omega2": 2.0, "beta_c": 2.0, "beta_h": 0.25,
        "compression": {"kind": "smooth_ramp", "tau": 1.0},
        "expansion": {"kind": "smooth_ramp", "tau": 1.0},
        "output": {"format": "csv", "path": "report.csv"}
    })";
    cfg.close();
    REQUIRE(run("cycle --config " + tmp.file("cycle.json"), tmp.path) == 0);
    const std::string header = slurp(tmp.file("report.csv")).substr(0, 300);
    for (const char* field : {"W1", "W3", "Q2", "Q4", "eta", "power", "eta_O", "eta_C",
                              "eta_CA", "eta_sq", "eta_nonad_bound", "Qstar_AB", "Qstar_CD"})
        CHECK(header.find(field) != std::string::npos);
}

TEST_CASE("cli: malformed config names the missing field and exits nonzero") {
    TempDir tmp;
    std::ofstream cfg(tmp.file("bad.json"));
    cfg << R"({
        "scenario": "cycle",
        "omega1": 1.0, "beta_c": 2.0, "beta_h": 0.25,
        "compression": {"kind": "smooth_ramp", "tau": 1.0},
        "expansion": {"kind": "smooth_ramp", "tau": 1.0},
        "output": {"format": "csv", "path": "report.csv"}
    })";
    cfg.close();
    const int code = run("cycle --config " + tmp.file("bad.json"), tmp.path,
                         tmp.file("stderr.txt"));
    CHECK(code == 2);
    CHECK(slurp(tmp.file("stderr.txt")).find("omega2") != std::string::npos);
    CHECK(!fs::exists(tmp.file("report.csv")));
}

TEST_CASE("cli: json parse errors exit nonzero with a diagnostic") {
    TempDir tmp;
    std::ofstream cfg(tmp.file("broken.json"));
    cfg << "{ not valid json";
    cfg.close();
    const int code = run("cycle --config " + tmp.file("broken.json"), tmp.path,
                         tmp.file("stderr.txt"));
    CHECK(code == 2);
    CHECK(slurp(tmp.file("stderr.txt")).find("parse error") != std::string::npos);
}

TEST_CASE("cli: unwritable output path exits nonzero and leaves no partial file") {
    TempDir tmp;
    const int code = run("stroke --config " + kConfigs +
                             "/stroke.json --out /nonexistent-dir/out.csv",
                         tmp.path, tmp.file("stderr.txt"));
    CHECK(code == 1);
    CHECK(!fs::exists("/nonexistent-dir/out.csv"));
    CHECK(slurp(tmp.file("stderr.txt")).find("nonexistent-dir") != std::string::npos);
}

TEST_CASE("cli: scenario/subcommand mismatch is rejected") {
    TempDir tmp;
    const int code = run("sweep --config " + kConfigs + "/cycle.json", tmp.path);
    CHECK(code == 2);
}

TEST_CASE("cli: sweep runs are byte-identical across parallelism degrees") {
    TempDir tmp;
    std::ofstream cfg(tmp.file("sweep.json"));
    cfg << R"({
        "scenario": "sweep",
        "base": {
            "omega1": 1.0, "omega2": 2.5, "beta_c": 2.0, "beta_h": 0.2,
            "medium": {"kind": "calogero_sutherland", "n": 4, "lambda": 0.0},
            "compression": {"kind": "smooth_ramp", "tau": 1.0},
            "expansion": {"kind": "smooth_ramp", "tau": 1.0}
        },
        "axes": [
            {"name": "tau", "values": [0.8, 1.5]},
            {"name": "beta_h", "values": [0.15, 0.25, 0.35]}
        ],
        "include_supremacy": true,
        "output": {"format": "csv", "path": "sweep.csv"}
    })";
    cfg.close();
    REQUIRE(run("sweep --config " + tmp.file("sweep.json") + " --out " + tmp.file("a.csv") +
                    " --jobs 1",
                tmp.path) == 0);
    REQUIRE(run("sweep --config " + tmp.file("sweep.json") + " --out " + tmp.file("b.csv") +
                    " --jobs 4",
                tmp.path) == 0);
    CHECK(slurp(tmp.file("a.csv")) == slurp(tmp.file("b.csv")));
}
