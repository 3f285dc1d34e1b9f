#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "asaw/cli.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

int run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv{"anderson_saw"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return asaw::cli::run(static_cast<int>(argv.size()), argv.data());
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("asaw_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { std::error_code ec; fs::remove_all(path, ec); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

json load(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    return json::parse(in);
}

} // namespace

TEST_CASE("verify saw-rep passes on a small cycle") {
    TempDir tmp;
    auto report_path = tmp.file("verify.json");
    int code = run_cli({"verify", "saw-rep", "--graph", "cycle:6", "--trials", "100",
                        "--seed", "1", "--eta", "0.1", "--json", report_path});
    CHECK(code == 0);
    auto report = load(report_path);
    CHECK(report["result"]["pass"] == true);
    CHECK(report["result"]["max_relative_error"].get<double>() < 1e-9);
    CHECK(report["config"]["graph"] == "cycle:6");
    CHECK(report["config"]["subcommand"] == "verify saw-rep");
}

TEST_CASE("saw count reproduces the path ground truth") {
    TempDir tmp;
    auto report_path = tmp.file("count.json");
    int code = run_cli({"saw", "count", "--graph", "path:5", "--source", "0",
                        "--target", "3", "--json", report_path});
    CHECK(code == 0);
    auto report = load(report_path);
    CHECK(report["result"]["y"] == 1);
    CHECK(report["result"]["x"] == 0);
    CHECK(report["result"]["xbar"] == 0);
    CHECK(report["result"]["w_prime"] == 1);
}

TEST_CASE("verify saw-rep exits 1 when the check cannot be met") {
    TempDir tmp;
    auto report_path = tmp.file("strict.json");
    // an unreachable tolerance turns the run into a failing check
    int code = run_cli({"verify", "saw-rep", "--graph", "cycle:5", "--trials", "5",
                        "--seed", "1", "--eta", "0.5", "--tol", "1e-20", "--json",
                        report_path});
    CHECK(code == 1);
    CHECK(load(report_path)["result"]["pass"] == false);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli({"fmm", "bound", "--graph", "path:5", "--frobnicate"}) == 2);
    CHECK(run_cli({"no-such-command"}) == 2);
    CHECK(run_cli({"saw", "count", "--source", "0", "--target", "1"}) == 2); // no graph
    CHECK(run_cli({"graph", "build", "--graph", "blob:3", "--out", "/dev/null"}) == 2);
    CHECK(run_cli({"graph", "info", "--graph", "cycle_shortcut:5,400@1"}) == 2); // infeasible
}

TEST_CASE("graph build writes a valid edge list that info can read back") {
    TempDir tmp;
    auto edges = tmp.file("g.txt");
    auto build_report = tmp.file("build.json");
    CHECK(run_cli({"graph", "build", "--graph", "cycle_shortcut:12,3@9", "--out", edges,
                   "--json", build_report}) == 0);
    auto info_report = tmp.file("info.json");
    CHECK(run_cli({"graph", "info", "--graph-file", edges, "--json", info_report}) == 0);
    auto report = load(info_report);
    CHECK(report["result"]["vertex_count"] == 12);
    CHECK(report["result"]["edge_count"] == 15);
}

TEST_CASE("saw table emits the pinned census CSV schema") {
    TempDir tmp;
    auto csv = tmp.file("census.csv");
    CHECK(run_cli({"saw", "table", "--graph", "path:6", "--csv", csv, "--json",
                   tmp.file("t.json")}) == 0);
    std::ifstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "d,script_W,script_S");
    std::string row0;
    std::getline(in, row0);
    CHECK(row0 == "0,1,1");
}

TEST_CASE("fmm estimate reports bound and satisfaction") {
    TempDir tmp;
    auto path = tmp.file("est.json");
    CHECK(run_cli({"fmm", "estimate", "--graph", "path:6", "--x", "0", "--y", "3",
                   "--lambda", "50", "--s", "0.5", "--eta", "0.01", "--trials", "400",
                   "--seed", "3", "--json", path}) == 0);
    auto report = load(path);
    CHECK(report["result"]["samples"] == 400);
    CHECK(report["result"]["mean"].get<double>() >= 0.0);
    CHECK(report["result"]["bound"].get<double>() > 0.0);
    CHECK(report["result"]["satisfied"] == true);
}

TEST_CASE("reports embed the resolved config and re-running reproduces them") {
    TempDir tmp;
    auto first = tmp.file("a.json");
    auto second = tmp.file("b.json");
    std::vector<std::string> args{"fmm",     "estimate", "--graph", "cycle:8",
                                  "--x",     "0",        "--y",     "2",
                                  "--lambda", "20",      "--s",     "0.4",
                                  "--eta",   "0.05",     "--trials", "250",
                                  "--seed",  "11"};
    auto a1 = args; a1.push_back("--json"); a1.push_back(first);
    auto a2 = args; a2.push_back("--json"); a2.push_back(second);
    CHECK(run_cli(a1) == 0);
    CHECK(run_cli(a2) == 0);
    auto ra = load(first);
    auto rb = load(second);
    CHECK(ra["result"]["mean"] == rb["result"]["mean"]); // bit-identical
    CHECK(ra["config"]["seed"] == 11);
    CHECK(ra["config"]["trials"] == 250);

    // reproducing from the embedded config alone
    auto cfg_path = tmp.file("cfg.json");
    {
        std::ofstream out(cfg_path);
        out << ra["config"].dump();
    }
    auto third = tmp.file("c.json");
    CHECK(run_cli({"fmm", "estimate", "--graph", "cycle:8", "--config", cfg_path,
                   "--json", third}) == 0);
    CHECK(load(third)["result"]["mean"] == ra["result"]["mean"]);
}

TEST_CASE("config file fills unset flags and flags win") {
    TempDir tmp;
    auto cfg_path = tmp.file("cfg.json");
    {
        std::ofstream out(cfg_path);
        out << R"({"source": 0, "target": 3})";
    }
    auto with_cfg = tmp.file("d.json");
    CHECK(run_cli({"saw", "count", "--graph", "path:5", "--config", cfg_path, "--json",
                   with_cfg}) == 0);
    CHECK(load(with_cfg)["result"]["d"] == 3);

    auto override_path = tmp.file("e.json");
    CHECK(run_cli({"saw", "count", "--graph", "path:5", "--config", cfg_path,
                   "--target", "2", "--json", override_path}) == 0);
    CHECK(load(override_path)["result"]["d"] == 2);
}

TEST_CASE("worker count never changes numbers") {
    TempDir tmp;
    auto one = tmp.file("w1.json");
    auto many = tmp.file("w4.json");
    std::vector<std::string> base{"localize", "probe",   "--graph", "path:12",
                                  "--x",      "0",       "--lambda", "50",
                                  "--trials", "60",      "--seed",  "5"};
    auto b1 = base; b1.insert(b1.end(), {"--workers", "1", "--json", one});
    auto b4 = base; b4.insert(b4.end(), {"--workers", "4", "--json", many});
    CHECK(run_cli(b1) == 0);
    CHECK(run_cli(b4) == 0);
    CHECK(load(one)["result"] == load(many)["result"]);
}

TEST_CASE("localize criterion and critical-lambda round trip") {
    TempDir tmp;
    auto crit = tmp.file("crit.json");
    CHECK(run_cli({"localize", "criterion", "--graph", "path:20", "--lambda", "1000000",
                   "--s", "0.5", "--epsilon", "0.25", "--json", crit}) == 0);
    auto report = load(crit);
    CHECK(report["result"]["satisfied"] == true);
    CHECK(report["result"]["decay_rate_mu"].get<double>() > 0.0);

    auto star = tmp.file("star.json");
    CHECK(run_cli({"localize", "critical-lambda", "--graph", "path:20", "--s", "0.5",
                   "--epsilon", "0.25", "--tolerance", "1e-7", "--json", star}) == 0);
    double lambda_star = load(star)["result"]["lambda_star"].get<double>();
    CHECK(lambda_star > 1.0);

    // criterion flips across the found threshold
    auto below = tmp.file("below.json");
    CHECK(run_cli({"localize", "criterion", "--graph", "path:20", "--lambda",
                   std::to_string(lambda_star * 0.99), "--s", "0.5", "--epsilon", "0.25",
                   "--json", below}) == 0);
    CHECK(load(below)["result"]["satisfied"] == false);
}

TEST_CASE("localize criterion accepts a census CSV in place of recomputation") {
    TempDir tmp;
    auto csv = tmp.file("census.csv");
    CHECK(run_cli({"saw", "table", "--graph", "path:20", "--csv", csv, "--json",
                   tmp.file("table.json")}) == 0);
    auto computed = tmp.file("computed.json");
    auto loaded = tmp.file("loaded.json");
    std::vector<std::string> base{"localize", "criterion", "--graph",  "path:20",
                                  "--lambda", "1000000",   "--s",      "0.5",
                                  "--epsilon", "0.25"};
    auto b1 = base; b1.insert(b1.end(), {"--json", computed});
    auto b2 = base; b2.insert(b2.end(), {"--census", csv, "--json", loaded});
    CHECK(run_cli(b1) == 0);
    CHECK(run_cli(b2) == 0);
    CHECK(load(computed)["result"]["series_value"] ==
          load(loaded)["result"]["series_value"]);
}

TEST_CASE("spectra spacing emits verdicts and sweep arrays") {
    TempDir tmp;
    auto single = tmp.file("sp.json");
    auto csv = tmp.file("sp.csv");
    CHECK(run_cli({"spectra", "spacing", "--graph", "cycle_shortcut:64,8@3", "--lambda",
                   "15", "--draws", "30", "--seed", "2", "--csv", csv, "--json",
                   single}) == 0);
    auto report = load(single);
    CHECK(report["result"].contains("verdict"));
    CHECK(report["result"]["spacings"].get<int>() >= 500);
    std::ifstream spacing_file(csv);
    int lines = 0;
    std::string line;
    while (std::getline(spacing_file, line)) ++lines;
    CHECK(lines == report["result"]["spacings"].get<int>());

    auto sweep = tmp.file("sweep.json");
    CHECK(run_cli({"spectra", "spacing", "--graph", "cycle_shortcut:64,8@3",
                   "--lambda-sweep", "1,15", "--draws", "20", "--seed", "2", "--json",
                   sweep}) == 0);
    auto sweep_report = load(sweep);
    REQUIRE(sweep_report["result"]["sweep"].size() == 2);
    CHECK(sweep_report["result"]["sweep"][0]["lambda"] == 1.0);
}

TEST_CASE("ANDERSON_SAW_SEED provides the default seed") {
    TempDir tmp;
    auto with_env = tmp.file("env.json");
    auto with_flag = tmp.file("flag.json");
    ::setenv("ANDERSON_SAW_SEED", "77", 1);
    CHECK(run_cli({"fmm", "estimate", "--graph", "path:4", "--x", "0", "--y", "1",
                   "--lambda", "8", "--s", "0.5", "--eta", "0.1", "--trials", "50",
                   "--json", with_env}) == 0);
    ::unsetenv("ANDERSON_SAW_SEED");
    CHECK(run_cli({"fmm", "estimate", "--graph", "path:4", "--x", "0", "--y", "1",
                   "--lambda", "8", "--s", "0.5", "--eta", "0.1", "--trials", "50",
                   "--seed", "77", "--json", with_flag}) == 0);
    auto env_report = load(with_env);
    CHECK(env_report["config"]["seed"] == 77);
    CHECK(env_report["result"]["mean"] == load(with_flag)["result"]["mean"]);
}

TEST_CASE("fmm graf-probe emits a finite witness") {
    TempDir tmp;
    auto path = tmp.file("probe.json");
    CHECK(run_cli({"fmm", "graf-probe", "--graph", "cycle:6", "--x", "0", "--y", "2",
                   "--lambda", "10", "--s", "0.5", "--eta", "0.01", "--trials", "300",
                   "--seed", "5", "--json", path}) == 0);
    auto report = load(path);
    CHECK(report["result"]["ratio"].get<double>() >= 0.0);
    CHECK(report["result"]["samples"] == 300);
}

TEST_CASE("localize consistency writes the pinned CSV schema") {
    TempDir tmp;
    auto csv = tmp.file("decay.csv");
    auto path = tmp.file("cons.json");
    CHECK(run_cli({"localize", "consistency", "--graph", "path:10", "--x", "0",
                   "--lambda", "100000", "--s", "0.5", "--epsilon", "0.25", "--trials",
                   "20", "--seed", "9", "--csv", csv, "--json", path}) == 0);
    auto report = load(path);
    CHECK(report["result"]["criterion_satisfied"] == true);
    CHECK(report["result"]["all_pass"] == true);
    std::ifstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "d,sum_expectation,bound_C_exp_minus_mu_d");
}

TEST_CASE("spectra ensemble spectra land in the norm bound") {
    TempDir tmp;
    auto path = tmp.file("ens.json");
    CHECK(run_cli({"spectra", "ensemble", "--graph", "cycle:40", "--lambda", "2",
                   "--draws", "5", "--seed", "4", "--json", path}) == 0);
    auto report = load(path);
    CHECK(report["result"]["min_eigenvalue"].get<double>() >= -4.0 - 1e-9);
    CHECK(report["result"]["max_eigenvalue"].get<double>() <= 4.0 + 1e-9);
}
