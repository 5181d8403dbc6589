#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "slantsub/cli.hpp"
#include "slantsub/report.hpp"

using namespace slantsub;

namespace {

const std::string kScenarioDir = std::string(SLANTSUB_SOURCE_DIR) + "/scenarios/";

double json_number(const std::string& json, const std::string& key) {
    const std::string needle = "\"" + key + "\":";
    const auto pos = json.find(needle);
    REQUIRE(pos != std::string::npos);
    return std::stod(json.substr(pos + needle.size()));
}

} // namespace

TEST_CASE("slant-angle e3 emits the pinned angle and verdict") {
    CliResult r = run_command({"slant-angle", "e3", "--format", "json"});
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"verdict\":\"proper-slant\"") != std::string::npos);
    CHECK(r.output.find("\"xi_position\":\"vertical\"") != std::string::npos);
    CHECK(json_number(r.output, "theta_mean") == doctest::Approx(0.7853981634).epsilon(1e-9));

    CliResult rh = run_command({"slant-angle", "hor", "--format", "json"});
    CHECK(rh.exit_code == 0);
    CHECK(rh.output.find("\"xi_position\":\"horizontal\"") != std::string::npos);

    CliResult re4 = run_command({"slant-angle", "e4", "--format", "json"});
    CHECK(re4.exit_code == 0);
    CHECK(re4.output.find("\"verdict\":\"invariant\"") != std::string::npos);
    CHECK(json_number(re4.output, "theta_mean") == doctest::Approx(0.0));
}

TEST_CASE("check-structure passes the catalog and fails the broken fixtures") {
    CHECK(run_command({"check-structure", "kim-r5"}).exit_code == 0);
    CHECK(run_command({"check-structure", "r2n1-cosymplectic(2)"}).exit_code == 0);

    CliResult phi = run_command({"check-structure", kScenarioDir + "broken-phi-r5.json",
                                 "--format", "json"});
    CHECK(phi.exit_code == 1);
    CHECK(phi.output.find("\"name\":\"phi-squared\"") != std::string::npos);
    CHECK(phi.output.find("\"pass\":false") != std::string::npos);

    CliResult eta = run_command({"check-structure", kScenarioDir + "broken-eta-r3.json",
                                 "--format", "json"});
    CHECK(eta.exit_code == 1);
    CHECK(eta.output.find("\"name\":\"deta-closed\"") != std::string::npos);
}

TEST_CASE("verify-inequality: required case flag, precondition error records") {
    CliResult bad = run_command({"verify-inequality", "e3"});
    CHECK(bad.exit_code == 2); // --case is required

    CliResult e4 = run_command({"verify-inequality", "e4", "--case", "vertical",
                                "--format", "json"});
    CHECK(e4.exit_code == 1);
    CHECK(e4.output.find("NotProperSlant") != std::string::npos);

    CliResult ok = run_command({"verify-inequality", "e3", "--case", "vertical",
                                "--format", "json", "--samples", "10"});
    CHECK(ok.exit_code == 0);
    CHECK(std::abs(json_number(ok.output, "slack_min")) <= 1e-6);

    CliResult okh = run_command({"verify-inequality", "hor", "--case", "horizontal",
                                 "--format", "json", "--samples", "10"});
    CHECK(okh.exit_code == 0);
    CHECK(okh.output.find("\"equality-flags\":\"true\"") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run_command({"frobnicate", "e3"}).exit_code == 2);
    CHECK(run_command({"slant-angle"}).exit_code == 2);
    CHECK(run_command({"slant-angle", "no-such-scenario"}).exit_code == 2);
    CHECK(run_command({"slant-angle", "e3", "--format", "yaml"}).exit_code == 2);
    CHECK(run_command({}).exit_code == 2);
}

TEST_CASE("every command is byte-deterministic for a fixed seed") {
    const std::vector<std::vector<std::string>> invocations = {
        {"check-structure", "kim-r5", "--format", "json", "--samples", "20"},
        {"check-submersion", "e3", "--format", "json", "--samples", "20"},
        {"slant-angle", "hor", "--format", "json", "--samples", "20", "--seed", "7"},
        {"verify-identities", "e3", "--format", "json", "--samples", "6"},
        {"verify-inequality", "hor", "--case", "horizontal", "--format", "json",
         "--samples", "5"},
        {"tension", "sphere-radius", "--format", "json", "--samples", "10"},
        {"anti-invariant", "anti-invariant-r5", "--format", "json", "--samples", "8"},
    };
    for (const auto& argv : invocations) {
        CliResult a = run_command(argv);
        CliResult b = run_command(argv);
        INFO(argv.front());
        CHECK(a.exit_code == b.exit_code);
        CHECK(a.output == b.output);
        CHECK(!a.output.empty());
    }
    // A different seed changes the bytes but not the verdicts.
    CliResult s1 = run_command({"slant-angle", "e3", "--format", "json", "--seed", "1"});
    CliResult s2 = run_command({"slant-angle", "e3", "--format", "json", "--seed", "2"});
    CHECK(s1.exit_code == 0);
    CHECK(s2.exit_code == 0);
    CHECK(s1.output != s2.output);
}

TEST_CASE("--out writes the report to a file") {
    const std::string path = "/tmp/slantsub-cli-out.json";
    std::remove(path.c_str());
    CliResult r = run_command({"slant-angle", "e3", "--format", "json", "--out", path,
                               "--samples", "10"});
    CHECK(r.exit_code == 0);
    CHECK(r.output.empty());
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str().find("proper-slant") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("tension and anti-invariant commands") {
    CliResult t = run_command({"tension", "e3", "--format", "json", "--samples", "10"});
    CHECK(t.exit_code == 0);
    CHECK(t.output.find("\"harmonic\":\"yes\"") != std::string::npos);

    CliResult ts = run_command({"tension", "sphere-radius", "--format", "json",
                                "--samples", "10"});
    CHECK(ts.exit_code == 0);
    CHECK(ts.output.find("\"harmonic\":\"no\"") != std::string::npos);

    CliResult anti = run_command({"anti-invariant", "anti-invariant-r5", "--format", "json",
                                  "--samples", "8"});
    CHECK(anti.exit_code == 0);
    CHECK(anti.output.find("c = 0 consistent") != std::string::npos);

    CliResult not_anti = run_command({"anti-invariant", "e3", "--format", "json"});
    CHECK(not_anti.exit_code == 1);
    CHECK(not_anti.output.find("NotAntiInvariant") != std::string::npos);
}

TEST_CASE("tolerance scale loosens every threshold") {
    // The broken-eta fixture passes check-structure once the tolerances are
    // scaled far enough to swallow the defect.
    CliResult strict = run_command({"check-structure", kScenarioDir + "broken-eta-r3.json",
                                    "--samples", "20"});
    CHECK(strict.exit_code == 1);
    CliResult loose = run_command({"check-structure", kScenarioDir + "broken-eta-r3.json",
                                   "--samples", "20", "--tolerance-scale", "1e9"});
    CHECK(loose.exit_code == 0);
}

TEST_CASE("json reports render numbers finitely and parse as JSON objects") {
    CliResult r = run_command({"check-submersion", "e3", "--format", "json", "--samples", "10"});
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("nan") == std::string::npos);
    CHECK(r.output.find("inf") == std::string::npos);
    CHECK(r.output.front() == '{');
    CHECK(r.output.find("\"checks\":[") != std::string::npos);
    CHECK(r.output.find("\"pass\":true") != std::string::npos);
}
