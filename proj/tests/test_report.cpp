#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "hexns/config.hpp"
#include "hexns/error.hpp"
#include "hexns/pipeline.hpp"
#include "hexns/report.hpp"

using namespace hexns;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("hexns_test_report_" + name);
    fs::remove_all(p);
    return p;
}

}  // namespace

TEST_CASE("verdict relations", "[report]") {
    CHECK(make_verdict("x", 1.0, "<=", 1.0, "/a").pass);
    CHECK_FALSE(make_verdict("x", 1.0, "<", 1.0, "/a").pass);
    CHECK(make_verdict("x", 2.0, ">", 1.0, "/a").pass);
    CHECK(make_verdict("x", 1.0, ">=", 1.0, "/a").pass);
    CHECK(make_verdict("x", 6.0, "==", 6.0, "/a").pass);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const char* rel : {"<=", "<", ">=", ">", "=="}) CHECK_FALSE(make_verdict("x", nan, rel, 1.0, "/a").pass);
    CHECK_THROWS_AS(make_verdict("x", 1.0, "~", 1.0, "/a"), DomainError);
}

TEST_CASE("doubles survive the dump", "[report]") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> e(-300, 300), m(-1, 1);
    ojson arr = ojson::array();
    std::vector<double> xs;
    for (int i = 0; i < 200; ++i) {
        const double x = m(rng) * std::pow(10.0, e(rng));
        xs.push_back(x);
        arr.push_back(x);
    }
    const ojson back = ojson::parse(dump_json(ojson{{"x", arr}}));
    for (std::size_t i = 0; i < xs.size(); ++i) CHECK(back["x"][i].get<double>() == xs[i]);
}

TEST_CASE("dump layout", "[report]") {
    ojson j;
    j["inf"] = std::numeric_limits<double>::infinity();
    j["nan"] = std::numeric_limits<double>::quiet_NaN();
    j["v"] = {1.5, 2.0, -3.25};
    j["s"] = "q\"uote";
    const std::string s = dump_json(j);
    CHECK(s.find("\"inf\": null") != std::string::npos);
    CHECK(s.find("\"nan\": null") != std::string::npos);
    CHECK(s.find("[1.5, 2, -3.25]") != std::string::npos);
    CHECK(ojson::parse(s)["s"] == "q\"uote");
    // key order is preserved
    CHECK(s.find("\"inf\"") < s.find("\"nan\""));
    CHECK(s.find("\"v\"") < s.find("\"s\""));
}

TEST_CASE("snapshot row with zero initial energy", "[report]") {
    Snapshot s;
    s.time = 0.5;
    s.energy = 0.0;
    CHECK(snapshot_row(s, 0.0).energy_residual == 0.0);
    s.energy = 1.0;
    s.dissipation = 0.5;
    CHECK(snapshot_row(s, 2.0).energy_residual == Catch::Approx(0.25));
}

TEST_CASE("run without probes has no probe records or profile files", "[report]") {
    const SimConfig c = parse_config(R"({"grid": {"n": 64}, "time": {"final_time": 0.02, "snapshot_every": 0.01}})");
    SimulationOutput sim = simulate(c);
    CHECK(sim.report.probes.empty());
    CHECK(sim.report.snapshots.size() == 3);
    const fs::path dir = scratch("noprobe");
    emit_report(sim.report, dir.string());
    const ojson j = ojson::parse(slurp(dir / "report.json"));
    CHECK(j["probes"].empty());
    CHECK(j["kind"] == "simulate");
    CHECK(j["provenance"]["seed"] == 42);
    for (const auto& e : fs::directory_iterator(dir)) CHECK(e.path().filename().string().rfind("profile_", 0) != 0);
    CHECK(fs::exists(dir / "series.csv"));
    CHECK(fs::exists(dir / "snapshots.csv"));
    fs::remove_all(dir);
}

TEST_CASE("speed probes carry no sinusoid fit", "[report]") {
    // n = 64 rings at the few-percent level, hence the loose support threshold
    const SimConfig c = parse_config(R"({"grid": {"n": 64}, "init": {"bumps": [{"cx": 0.3, "cy": 0, "r": 1.7, "amp": 1}]}})");
    const Datum d = build_datum(c);
    MomentumFlux f;
    f.a = 1.0;
    f.d = 0.5;
    const auto recs = probe_snapshot(d.omega, f, 0.0, {3.5}, 2.0, 64, {Component::Speed, Component::U1}, 0.1);
    REQUIRE(recs.size() == 1);
    REQUIRE(recs[0].components.size() == 2);
    CHECK_FALSE(recs[0].components[0].fit.has_value());
    CHECK_FALSE(recs[0].components[0].comparison.has_value());
    CHECK(recs[0].components[1].fit.has_value());
    CHECK(recs[0].isotropy.has_value());
    const ojson j = to_json(recs[0]);
    CHECK(j["components"][0]["fit"].is_null());
    CHECK(j["components"][1]["fit"].is_object());
}

TEST_CASE("identical runs emit identical bytes", "[report]") {
    const SimConfig c = parse_config(R"({"grid": {"n": 64}, "time": {"final_time": 0.02, "snapshot_every": 0.01},
                                          "init": {"seed": 3}})");
    RunReport r1 = simulate(c).report;
    RunReport r2 = simulate(c).report;
    r1.tables.push_back({"t", {"x", "y"}, {{1.0 / 3.0, 2.0}, {std::nan(""), 1e300}}});
    r2.tables = r1.tables;
    r2.wall_seconds = r1.wall_seconds + 1.0;
    const fs::path a = scratch("a"), b = scratch("b");
    emit_report(r1, a.string());
    emit_report(r2, b.string());
    std::size_t compared = 0;
    for (const auto& e : fs::directory_iterator(a)) {
        const auto name = e.path().filename();
        if (name == "timing.json") continue;
        CHECK(slurp(e.path()) == slurp(b / name));
        ++compared;
    }
    CHECK(compared >= 4);
    CHECK(slurp(a / "timing.json") != slurp(b / "timing.json"));
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST_CASE("unwritable output is an I/O error", "[report]") {
    CHECK_THROWS_AS(write_text_file("/proc/hexns/none.txt", "x"), IoError);
}
