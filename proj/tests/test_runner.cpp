#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "qotto/errors.hpp"
#include "qotto/runner.hpp"
#include "qotto/table.hpp"

using namespace qotto;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        std::mt19937_64 rng(std::random_device{}());
        path = fs::temp_directory_path() / ("qotto_test_" + std::to_string(rng()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("result table: csv quoting, headers and 17-digit doubles") {
    ResultTable t({"name", "value", "flag", "undefined"});
    t.add_row({Cell{std::string("plain")}, Cell{1.0 / 3.0}, Cell{true}, Cell{std::monostate{}}});
    t.add_row({Cell{std::string("a,b \"quoted\"")}, Cell{std::int64_t{42}}, Cell{false},
               Cell{2.5}});
    const std::string csv = t.to_csv();
    CHECK(csv.find("name,value,flag,undefined\n") == 0);
    CHECK(csv.find("0.33333333333333331") != std::string::npos);
    CHECK(csv.find("\"a,b \"\"quoted\"\"\"") != std::string::npos);
    CHECK(csv.find(",true,") != std::string::npos);

    // empty field for the undefined cell
    std::istringstream lines(csv);
    std::string header, row1;
    std::getline(lines, header);
    std::getline(lines, row1);
    CHECK(row1.back() == ',');  // trailing empty field

    CHECK_THROWS_AS(t.add_row({Cell{1.0}}), std::invalid_argument);
}

TEST_CASE("format_double round-trips bit-exactly") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> uni(-1e6, 1e6);
    for (int i = 0; i < 1000; ++i) {
        const double v = uni(rng) * std::pow(10.0, int(rng() % 40) - 20);
        CHECK(std::stod(format_double(v)) == v);
    }
}

TEST_CASE("result table: json emit re-parses to identical values") {
    ResultTable t({"x", "label", "ok"});
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> uni(-10.0, 10.0);
    std::vector<double> xs;
    for (int i = 0; i < 50; ++i) {
        xs.push_back(uni(rng) * std::pow(10.0, int(rng() % 30) - 15));
        t.add_row({Cell{xs.back()}, Cell{std::string("row")}, Cell{i % 2 == 0}});
    }
    const json parsed = json::parse(t.to_json());
    REQUIRE(parsed.size() == 50);
    for (int i = 0; i < 50; ++i) CHECK(parsed[i]["x"].get<double>() == xs[i]);
}

TEST_CASE("write_file_atomic: failures leave nothing behind") {
    const std::string bad = "/nonexistent-dir/qotto-out.csv";
    CHECK_THROWS_AS(write_file_atomic(bad, "data"), std::runtime_error);
    CHECK(!fs::exists(bad));
    CHECK(!fs::exists(bad + ".tmp"));
}

TEST_CASE("protocol_from_json covers every kind") {
    auto parse = [](const char* text) { return protocol_from_json(json::parse(text)); };
    CHECK(parse(R"({"kind":"constant","omega0":1.0,"tau":2.0})").kind() ==
          FrequencyProtocol::Kind::Constant);
    CHECK(parse(R"({"kind":"linear_ramp","omega0":1.0,"omega_f":2.0,"tau":2.0})").kind() ==
          FrequencyProtocol::Kind::LinearRamp);
    CHECK(parse(R"({"kind":"smooth_ramp","omega0":1.0,"omega_f":2.0,"tau":2.0})").kind() ==
          FrequencyProtocol::Kind::SmoothRamp);
    CHECK(parse(R"({"kind":"sta_poly","omega0":1.0,"b_tau":1.5,"tau":2.0})").kind() ==
          FrequencyProtocol::Kind::PolynomialSta);
    CHECK(parse(R"({"kind":"sudden","omega0":1.0,"omega_f":2.0})").duration() == 0.0);
    CHECK(parse(R"({"kind":"local_cd_smooth","omega0":1.0,"omega_f":2.0,"tau":2.0})").kind() ==
          FrequencyProtocol::Kind::LocalCd);
    CHECK(parse(R"({"kind":"sampled","values":[1.0,0.8,0.5],"tau":2.0})").kind() ==
          FrequencyProtocol::Kind::Sampled);

    // sta_poly with injected cycle endpoints derives b_tau from the ratio
    const auto p = protocol_from_json(json::parse(R"({"kind":"sta_poly","tau":5.0})"), 1.0, 2.0);
    CHECK(p.b_tau() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));

    CHECK_THROWS_AS(parse(R"({"kind":"warp","omega0":1.0,"tau":1.0})"), ConfigError);
    CHECK_THROWS_AS(parse(R"({"kind":"linear_ramp","omega0":1.0,"tau":1.0})"), ConfigError);
}

TEST_CASE("config errors name the missing field") {
    TempDir tmp;
    json config = json::parse(R"({
        "scenario": "cycle",
        "omega1": 1.0,
        "beta_c": 2.0, "beta_h": 0.25,
        "compression": {"kind": "smooth_ramp", "tau": 1.0},
        "expansion": {"kind": "smooth_ramp", "tau": 1.0},
        "output": {"format": "json", "path": "r.json"}
    })");
    config["output"]["path"] = tmp.file("r.json");
    try {
        run_scenario(config);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.field == "omega2");
        CHECK(std::string(e.what()).find("omega2") != std::string::npos);
    }
}

TEST_CASE("stroke scenario: constant protocol reports Q* identically one") {
    TempDir tmp;
    json config = {
        {"scenario", "stroke"},
        {"protocol", {{"kind", "constant"}, {"omega0", 1.0}, {"tau", 2.0}}},
        {"samples", 21},
        {"output", {{"format", "csv"}, {"path", tmp.file("stroke.csv")}}},
    };
    run_scenario(config);
    const std::string csv = slurp(tmp.file("stroke.csv"));
    CHECK(csv.find("t,omega_sq,b,bdot,bddot,Qstar\n") == 0);
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);  // header
    int rows = 0;
    while (std::getline(lines, line)) {
        CHECK(line.substr(line.rfind(',') + 1) == "1");
        ++rows;
    }
    CHECK(rows == 21);
}

TEST_CASE("cycle scenario: sta strokes emit eta equal to eta_O") {
    TempDir tmp;
    json config = json::parse(R"({
        "scenario": "cycle",
        "omega1": 1.0, "omega2": 2.0, "beta_c": 2.0, "beta_h": 0.25,
        "compression": {"kind": "sta_poly", "tau": 10.0},
        "expansion": {"kind": "sta_poly", "tau": 10.0},
        "output": {"format": "json", "path": ""}
    })");
    config["output"]["path"] = tmp.file("cycle.json");
    run_scenario(config);
    const json report = json::parse(slurp(tmp.file("cycle.json")));
    REQUIRE(report.is_array());
    REQUIRE(report.size() == 1);
    CHECK(report[0]["eta"].get<double>() ==
          doctest::Approx(report[0]["eta_O"].get<double>()).epsilon(1e-9));
    CHECK(report[0]["engine_condition"].get<bool>());
    CHECK(report[0]["power"].get<double>() > 0.0);
}

TEST_CASE("single-point sweep reproduces the cycle scenario row") {
    TempDir tmp;
    json cycle = json::parse(R"({
        "scenario": "cycle",
        "omega1": 1.0, "omega2": 2.0, "beta_c": 2.0, "beta_h": 0.25,
        "compression": {"kind": "smooth_ramp", "tau": 1.5},
        "expansion": {"kind": "smooth_ramp", "tau": 1.5},
        "output": {"format": "json", "path": ""}
    })");
    cycle["output"]["path"] = tmp.file("cycle.json");
    run_scenario(cycle);

    json sweep = {
        {"scenario", "sweep"},
        {"base", json::parse(R"({
            "omega1": 1.0, "omega2": 2.0, "beta_c": 2.0, "beta_h": 0.25,
            "compression": {"kind": "smooth_ramp", "tau": 1.5},
            "expansion": {"kind": "smooth_ramp", "tau": 1.5}
        })")},
        {"axes", json::array({{{"name", "tau"}, {"values", {1.5}}}})},
        {"output", {{"format", "json"}, {"path", tmp.file("sweep.json")}}},
    };
    run_scenario(sweep);

    const json cycle_row = json::parse(slurp(tmp.file("cycle.json")))[0];
    const json sweep_rows = json::parse(slurp(tmp.file("sweep.json")));
    REQUIRE(sweep_rows.size() == 1);
    const json& row = sweep_rows[0];
    CHECK(row["status"] == "ok");
    for (const auto& [key, value] : cycle_row.items())
        if (value.is_number()) CHECK(row[key].get<double>() == value.get<double>());
}

TEST_CASE("sweep: row count, ordering, and in-row failure capture") {
    TempDir tmp;
    json config = {
        {"scenario", "sweep"},
        {"base", json::parse(R"({
            "omega1": 1.0, "omega2": 2.0, "beta_c": 2.0, "beta_h": 0.25,
            "compression": {"kind": "smooth_ramp", "tau": 1.0},
            "expansion": {"kind": "smooth_ramp", "tau": 1.0}
        })")},
        // beta_h = 3.0 exceeds beta_c: that point must fail in-row.
        {"axes", json::array({{{"name", "tau"}, {"values", {0.5, 1.0}}},
                              {{"name", "beta_h"}, {"values", {0.25, 3.0, 0.4}}}})},
        {"output", {{"format", "json"}, {"path", tmp.file("sweep.json")}}},
    };
    run_scenario(config);
    const json rows = json::parse(slurp(tmp.file("sweep.json")));
    REQUIRE(rows.size() == 6);  // product of axis counts
    // lexicographic order: first axis slowest
    CHECK(rows[0]["tau"].get<double>() == 0.5);
    CHECK(rows[2]["tau"].get<double>() == 0.5);
    CHECK(rows[3]["tau"].get<double>() == 1.0);
    CHECK(rows[1]["beta_h"].get<double>() == 3.0);
    for (int i : {0, 2, 3, 5}) CHECK(rows[i]["status"] == "ok");
    for (int i : {1, 4}) {
        CHECK(rows[i]["status"].get<std::string>().find("error") == 0);
        CHECK(rows[i]["eta"].is_null());
    }
}

TEST_CASE("sweep: parallel execution is byte-identical to serial") {
    TempDir tmp;
    json config = {
        {"scenario", "sweep"},
        {"base", json::parse(R"({
            "omega1": 1.0, "omega2": 2.5, "beta_c": 2.0, "beta_h": 0.2,
            "medium": {"kind": "calogero_sutherland", "n": 3, "lambda": 0.5},
            "compression": {"kind": "smooth_ramp", "tau": 1.0},
            "expansion": {"kind": "smooth_ramp", "tau": 1.0}
        })")},
        {"axes", json::array({{{"name", "tau"}, {"values", {0.7, 1.3, 2.1}}},
                              {{"name", "n"}, {"values", {1, 2, 3}}}})},
        {"include_supremacy", true},
        {"output", {{"format", "csv"}, {"path", ""}}},
    };
    config["output"]["path"] = tmp.file("serial.csv");
    run_scenario(config, RunOptions{"", 1});
    config["output"]["path"] = tmp.file("parallel.csv");
    run_scenario(config, RunOptions{"", 4});
    CHECK(slurp(tmp.file("serial.csv")) == slurp(tmp.file("parallel.csv")));

    // n = 1 rows have unit supremacy ratios.
    config["output"]["path"] = tmp.file("rows.json");
    config["output"]["format"] = "json";
    run_scenario(config);
    for (const auto& row : json::parse(slurp(tmp.file("rows.json"))))
        if (row["n"].get<double>() == 1.0) {
            CHECK(row["power_ratio"].get<double>() == 1.0);
            CHECK(row["efficiency_ratio"].get<double>() == 1.0);
        }
}

TEST_CASE("cd scenario writes work, metrics and summary files") {
    TempDir tmp;
    json config = json::parse(R"({
        "scenario": "cd",
        "path": {"kind": "qubit", "delta": 1.0, "lambda_from": -2.0, "lambda_to": 2.0, "tau": 1.0},
        "p0": "ground",
        "steps": 4000,
        "metrics_samples": 41,
        "work_output": {"format": "csv", "path": ""},
        "metrics_output": {"format": "csv", "path": ""},
        "summary_output": {"format": "json", "path": ""}
    })");
    config["work_output"]["path"] = tmp.file("w.csv");
    config["metrics_output"]["path"] = tmp.file("m.csv");
    config["summary_output"]["path"] = tmp.file("s.json");
    run_scenario(config);

    const std::string work = slurp(tmp.file("w.csv"));
    CHECK(work.find("W,p\n") == 0);
    const std::string metrics = slurp(tmp.file("m.csv"));
    CHECK(metrics.find("t,hs_norm_sq,variance\n") == 0);
    const json summary = json::parse(slurp(tmp.file("s.json")));
    CHECK(summary[0]["fidelity_ground"].get<double>() >= 1.0 - 1e-8);
    CHECK(summary[0]["mean_work_cd"].get<double>() ==
          doctest::Approx(summary[0]["mean_work_ad"].get<double>()).epsilon(1e-8));
}

TEST_CASE("unknown scenario and axis names are rejected") {
    CHECK_THROWS_AS(run_scenario(json{{"scenario", "warp"}}), ConfigError);
    json sweep = {
        {"scenario", "sweep"},
        {"base", json::object()},
        {"axes", json::array({{{"name", "bogus"}, {"values", {1.0}}}})},
        {"output", {{"format", "csv"}, {"path", "/tmp/x.csv"}}},
    };
    CHECK_THROWS_AS(run_scenario(sweep), ConfigError);
}
