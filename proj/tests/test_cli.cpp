#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

using Json = nlohmann::json;

namespace {

struct RunResult {
    int exit_code;
    Json json;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(HEISDYN_BIN) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    int status = pclose(pipe);
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.json = Json::parse(out, nullptr, false);
    return r;
}

}  // namespace

TEST_CASE("reports carry the schema and the config") {
    auto r = run("ring mul \"y\" \"x\"");
    CHECK(r.exit_code == 0);
    REQUIRE(!r.json.is_discarded());
    CHECK(r.json["schema"] == "heisdyn-report/1");
    CHECK(r.json["command"] == "ring mul");
    CHECK(r.json.contains("config"));
    CHECK(r.json["config"].contains("seed"));
    CHECK(r.json["result"]["product"] == "x*y*z");
}

TEST_CASE("ring subcommands") {
    auto star = run("ring star \"x+y+z+2\"");
    CHECK(star.json["result"]["star"] == "x^-1+y^-1+z^-1+2");

    auto newton = run("ring newton \"x*y*z^2-x*z+y-z\"");
    std::vector<std::vector<int64_t>> square = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    CHECK(newton.json["result"]["vertices"].get<std::vector<std::vector<int64_t>>>() == square);

    auto content = run("ring content \"(z^2-1)*x+(z-1)*y\"");
    CHECK(content.json["result"]["content"]["text"] == "-1+z");

    auto qb = run("ring qbinom 2");
    CHECK(qb.json["result"]["coefficients"][1]["text"] == "1+z");
}

TEST_CASE("mixing subcommands") {
    auto c1 = run("mixing central \"z^2-z-1\"");
    CHECK(c1.json["result"]["mixing"] == true);
    auto c2 = run("mixing central \"z^3-1\"");
    CHECK(c2.json["result"]["mixing"] == false);
    CHECK(c2.json["result"]["cyclotomic_order"] == 1);

    auto h1 = run("mixing hayes \"1+x+y\"");
    CHECK(h1.json["result"]["mixing_sufficient"] == true);
    // x+z-2 sits in the x,z subring: condition (1) applies even though the
    // abelianization x-1 is cyclotomic
    auto h2 = run("mixing hayes \"x+z-2\"");
    CHECK(h2.json["result"]["subring"] == "x,z");
    CHECK(h2.json["result"]["mixing_sufficient"] == true);
    auto h3 = run("mixing hayes \"(z^1+3)*x+(z^1+2)*y+(z^1+7)*x*y\"");
    CHECK(h3.json["result"]["mixing_sufficient"] == true);
    auto h4 = run("mixing hayes \"(z-1)*(x+y)\"");  // content is cyclotomic
    CHECK(h4.json["result"]["mixing_sufficient"] == false);
    CHECK(h4.json["result"]["content_cyclotomic_order"] == 1);
}

TEST_CASE("entropy trace through the CLI") {
    auto r = run("entropy trace \"5-x-x^-1-y-y^-1\" --tol 1e-6");
    CHECK(r.exit_code == 0);
    double v = r.json["result"]["value"];
    CHECK(v == doctest::Approx(1.514708).epsilon(2e-6));
    CHECK(r.json["result"]["method"] == "trace-series");
    CHECK(r.json["config"]["tol"] == 1e-6);
}

TEST_CASE("expansive linear through the CLI") {
    auto r = run("expansive linear --h \"1\" --g \"-x-z-2\" --grid 512");
    CHECK(r.exit_code == 0);
    CHECK(r.json["result"]["status"] == "nonexpansive");
    double zr = r.json["result"]["witness"]["zeta_re"];
    double xr = std::abs(double(r.json["result"]["witness"]["xi_re"]));
    double xi_im = std::abs(double(r.json["result"]["witness"]["xi_im"]));
    CHECK(zr == doctest::Approx(-1.0));
    CHECK(xr == doctest::Approx(std::cos(M_PI / 6)).epsilon(1e-8));
    CHECK(xi_im == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("words cache round trip through the CLI") {
    std::string cache = "/tmp/heisdyn_cache_test.json";
    std::remove(cache.c_str());
    auto r1 = run("words heis --nmax 12 --cache " + cache);
    CHECK(r1.json["result"]["from_cache"] == false);
    CHECK(r1.json["result"]["counts"][2] == "4");
    auto r2 = run("words heis --nmax 12 --cache " + cache);
    CHECK(r2.json["result"]["from_cache"] == true);
    CHECK(r2.json["result"]["counts"] == r1.json["result"]["counts"]);
    std::remove(cache.c_str());
}

TEST_CASE("exit codes") {
    auto bad = run("ring star \"w+1\"");
    CHECK(bad.exit_code == 1);
    CHECK(bad.json.contains("error"));

    auto none = run("expansive lopsidize \"x-1\"");
    CHECK(none.exit_code == 2);  // budget exhausted, no certificate
    CHECK(none.json["result"]["found"] == false);
}

TEST_CASE("csv sidecar") {
    std::string csv = "/tmp/heisdyn_csv_test.csv";
    std::remove(csv.c_str());
    auto r = run("expansive scan --g \"-x-z-2\" --h \"1\" --zeta-theta 0.5 --xi-theta " +
                 std::to_string(1.0 / 12.0) + " -N 16 --csv " + csv);
    CHECK(r.exit_code == 0);
    FILE* f = fopen(csv.c_str(), "r");
    REQUIRE(f != nullptr);
    char line[256];
    REQUIRE(fgets(line, sizeof line, f) != nullptr);
    CHECK(std::string(line).substr(0, 5) == "n,psi");
    fclose(f);
    std::remove(csv.c_str());
}

TEST_CASE("randprod through the CLI") {
    auto r = run("randprod --n 2000 --trials 3 --seed 9");
    CHECK(r.exit_code == 0);
    CHECK(r.json["result"]["per_trial"].size() == 3);
    auto r2 = run("randprod --n 2000 --trials 3 --seed 9");
    CHECK(r.json["result"]["per_trial"] == r2.json["result"]["per_trial"]);
}

TEST_CASE("rerunning the embedded config reproduces the report") {
    auto a = run("entropy lyapunov \"y-3-x\" --steps 4000 --samples 2 --seed 77 --zeta-grid 4");
    auto b = run("entropy lyapunov \"y-3-x\" --steps 4000 --samples 2 --seed 77 --zeta-grid 4");
    CHECK(a.json["result"]["value"] == b.json["result"]["value"]);
    CHECK(a.json["config"] == b.json["config"]);
    CHECK(a.json.contains("version"));
}
