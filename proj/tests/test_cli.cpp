#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "helpers.hpp"

using nlohmann::json;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    std::string cmd = std::string(SOBCURVE_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* f = popen(cmd.c_str(), "r");
    REQUIRE(f != nullptr);
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, f)) > 0) r.out.append(buf, n);
    int status = pclose(f);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

json result_of(const Run& r) { return json::parse(r.out).at("result"); }

std::string data(const std::string& name) { return testing::data_path(name + ".json"); }

}  // namespace

TEST_CASE("verdict on the corpus example") {
    Run r = run("verdict " + data("heuristic_example"));
    CHECK(r.code == 0);
    json env = json::parse(r.out);
    CHECK(env["command"] == "verdict");
    CHECK(env.contains("version"));
    CHECK(env.contains("wall_time"));
    CHECK(env["result"]["verdict"] == "unbounded");
    CHECK(env["result"]["kernelDim"] == 2);
}

TEST_CASE("kernel and verify-bound payloads") {
    json k = result_of(run("kernel " + data("heuristic_example") + " --exact"));
    CHECK(k["dim"] == 2);
    CHECK(k["basis"].size() == 2);
    CHECK(k["exact"]["dim"] == 2);
    CHECK(k["certificate"]["found"] == true);
    json b = result_of(run("verify-bound " + data("legendre_k0") + " --n-max 20 --N 64"));
    CHECK(b["bound_ok"] == true);
    CHECK(b["sigmaMax"].get<double>() <= 1.0);
    json m = result_of(run("muckenhoupt " + data("delta_lebesgue_k1")));
    CHECK(m["value"].get<double>() == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("exit codes") {
    CHECK(run("verdict " + data("dyadic_d3")).code == 0);
    CHECK(run("verdict " + data("dyadic_d3") + " --strict").code == 2);
    CHECK(run("verdict " + data("legendre_k0") + " --strict").code == 0);
    CHECK(run("verdict /nonexistent.json").code == 1);
    CHECK(run("verdict " + data("legendre_k0") + " --bogus").code == 1);
    CHECK(run("frobnicate " + data("legendre_k0")).code == 1);
    CHECK(run("kernel " + data("legendre_k0") + " --format csv").code == 1);
    std::string bad = (std::filesystem::temp_directory_path() / "sobcurve_bad.json").string();
    std::ofstream(bad) << "{\"p\": 2,\n";
    CHECK(run("analyze " + bad).code == 1);
}

TEST_CASE("payloads are deterministic") {
    for (const char* cmd : {"analyze", "kernel", "classify", "verdict", "zeros"}) {
        CAPTURE(cmd);
        std::string args = std::string(cmd) + " " + data("k2_two_gaps_unbounded");
        CHECK(result_of(run(args)).dump() == result_of(run(args)).dump());
    }
}

TEST_CASE("CSV and output files") {
    Run z = run("zeros " + data("legendre_k0") + " --n-max 3 --format csv");
    CHECK(z.code == 0);
    std::istringstream in(z.out);
    std::string header;
    std::getline(in, header);
    CHECK(header == "degree,re,im");
    int rows = 0;
    for (std::string line; std::getline(in, line);) ++rows;
    CHECK(rows == 6);
    std::string path = (std::filesystem::temp_directory_path() / "sobcurve_sigma.csv").string();
    CHECK(run("verify-bound " + data("legendre_k0") + " --format csv -o " + path).code == 0);
    std::ifstream f(path);
    std::getline(f, header);
    CHECK(header == "N,sigma_max");
}

TEST_CASE("generator depth override") {
    json a = result_of(run("kernel " + data("dyadic_d3") + " --depth 1"));
    json b = result_of(run("kernel " + data("dyadic_d3")));
    CHECK(a["components"].size() < b["components"].size());
    CHECK(run("kernel " + data("legendre_k0") + " --depth 1").code == 1);
}
