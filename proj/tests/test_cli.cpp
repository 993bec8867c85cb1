#include <doctest.h>

#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qeuclid/cli.hpp"

using namespace qeuclid;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::initializer_list<const char*> args) {
    std::vector<const char*> argv{"qeuclid"};
    argv.insert(argv.end(), args);
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("normalize") {
    CHECK(cli({"normalize", "xp*xm - xm*xp - h*xz^2"}).out == "0\n");
    const Run r = cli({"normalize", "xiz*xiz"});
    CHECK(r.code == kExitPass);
    CHECK(r.out == "h * xim*xip\n");
}

TEST_CASE("parse errors exit with a usage code and a caret") {
    const Run r = cli({"normalize", "xm + foo"});
    CHECK(r.code == kExitUsage);
    CHECK(r.err.find("offset 5") != std::string::npos);
    CHECK(r.err.find("\n       ^") != std::string::npos);
    CHECK(cli({"limit", "xm/xp"}).code == kExitUsage);
}

TEST_CASE("usage errors") {
    CHECK(cli({}).code == kExitUsage);
    CHECK(cli({"verify", "nonsense"}).code == kExitUsage);
    CHECK(cli({"verify", "--sigma", "R"}).code == kExitUsage);
    CHECK(cli({"verify", "--bogus"}).code == kExitUsage);
    CHECK(cli({"matrix", "Q"}).code == kExitUsage);
    CHECK(cli({"verify", "--alpha", "xm"}).code == kExitUsage);
    CHECK(cli({"verify", "--alpha", "0"}).code == kExitUsage);
    CHECK(cli({"--help"}).code == kExitPass);
}

TEST_CASE("verify exit codes") {
    CHECK(cli({"verify", "braid"}).code == kExitPass);
    const Run t = cli({"verify", "torsion"});
    CHECK(t.code == kExitFail);
    CHECK(t.out.find("1 of 1 suites fail") != std::string::npos);
    CHECK(cli({"verify", "torsion", "--sigma", "qRinv"}).code == kExitPass);
}

TEST_CASE("metric compatibility defect is printed") {
    const Run r = cli({"verify", "metric-compat", "--sigma", "qR", "--calculus", "unbarred"});
    CHECK(r.code == kExitPass);
    CHECK(r.out.find("defect [qR, unbarred]: q^2") != std::string::npos);
}

TEST_CASE("json report has a fixed shape") {
    const Run r = cli({"verify", "braid", "torsion", "--sigma", "qR", "--alpha", "2", "--json"});
    CHECK(r.code == kExitFail);
    const auto j = nlohmann::json::parse(r.out);
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"options", "status", "suites"});
    CHECK(j["status"] == "fail");
    CHECK(j["options"]["sigma"] == "qR");
    CHECK(j["options"]["calculus"] == "all");
    CHECK(j["options"]["alpha"] == "2");
    CHECK(j["options"]["radius_reduction"] == true);
    REQUIRE(j["suites"].size() == 2);
    for (const auto& s : j["suites"]) {
        std::vector<std::string> sk;
        for (const auto& [k, v] : s.items()) sk.push_back(k);
        CHECK(sk == std::vector<std::string>{"checks", "failures", "name", "notes", "seconds", "status"});
    }
    CHECK(j["suites"][0]["name"] == "braid");
    CHECK(j["suites"][1]["failures"].size() == 6);
    CHECK(j["suites"][1]["failures"][0].contains("residual"));
}

TEST_CASE("matrix") {
    const Run r = cli({"matrix", "g"});
    CHECK(r.code == kExitPass);
    CHECK(r.out.find("00  1\n") != std::string::npos);
    CHECK(cli({"matrix", "Rhat"}).out.find("00|00  1\n") != std::string::npos);
}

TEST_CASE("limit") {
    CHECK(cli({"limit", "xp*xm - xm*xp"}).out == "0\n");
    const Run d = cli({"limit", "h^-2*xm"});
    CHECK(d.code == kExitPass);
    CHECK(d.out == "divergent: pole of order 2 in sqrtq - 1\n");
    CHECK(cli({"limit", "h^-1*(q*Lam-Laminv)", "--order", "2"}).out == "(1 + t + O(t^3)) * 1\n");
    CHECK(cli({"limit", "--real", "xm*xp"}).code == kExitPass);
}
