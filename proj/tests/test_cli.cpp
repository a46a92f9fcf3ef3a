#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "thetascope/cli.hpp"
#include "support/schema_check.hpp"

using thetascope::cli::run;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

nlohmann::json load_schema() {
    // Located relative to the source tree; the test binary runs from the
    // build directory under ctest.
    for (const char* candidate : {"schemas/cli_output.schema.json",
                                  "../schemas/cli_output.schema.json",
                                  "../../schemas/cli_output.schema.json"}) {
        std::ifstream f(candidate);
        if (f) return nlohmann::json::parse(f);
    }
    throw std::runtime_error("cli_output.schema.json not found");
}

void check_against_schema(const std::string& subcommand, const std::string& doc) {
    static const nlohmann::json schema = load_schema();
    const auto parsed = nlohmann::json::parse(doc);
    std::string error;
    const bool ok = schema_check::validate(parsed, schema["subcommands"][subcommand],
                                           schema, error);
    INFO(subcommand, ": ", error);
    CHECK(ok);
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("identical argv produces byte-identical output") {
    auto a = invoke({"eval", "--q", "0.5", "--x-re", "1"});
    auto b = invoke({"eval", "--q", "0.5", "--x-re", "1"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());
}

TEST_CASE("JSON round-trips losslessly") {
    auto r = invoke({"eval", "--q", "0.7", "--x-re", "1.25", "--x-im", "-0.5"});
    REQUIRE(r.code == 0);
    auto parsed = nlohmann::json::parse(r.out);
    // Serializing the parse reproduces every numeric field exactly.
    auto reparsed = nlohmann::json::parse(parsed.dump());
    CHECK(parsed == reparsed);
    CHECK(parsed["value"]["re"].get<double>() ==
          nlohmann::json::parse(parsed.dump())["value"]["re"].get<double>());
}

TEST_CASE("usage errors exit with 64") {
    CHECK(invoke({"eval"}).code == 64);                       // missing required
    CHECK(invoke({"no-such-command"}).code == 64);
    CHECK(invoke({"eval", "--q", "1.5", "--x-re", "0"}).code == 64); // |q| >= 1
    CHECK(invoke({"certify-disk", "--q", "0"}).code == 64);   // vacuous certificate
    CHECK(invoke({"zeros", "--q", "0", "--n", "8"}).code == 64);
    CHECK(invoke({"sqrt-disk", "--q", "0.5"}).code == 64);    // bound not claimed there
}

TEST_CASE("trivial eval example") {
    auto r = invoke({"eval", "--q", "0", "--x-re", "3"});
    CHECK(r.code == 0);
    CHECK(r.out == "{\"value\":{\"re\":1.0,\"im\":0.0},\"tail_bound\":0.0,\"terms_used\":1}\n");
}

TEST_CASE("certification exit codes") {
    CHECK(invoke({"certify-disk", "--q", "0.98", "--radius", "1"}).code == 0);
    // Radius above 1: winding 1 is valid data, not a Theorem-1 violation.
    auto r = invoke({"certify-disk", "--q", "-0.4", "--radius", "2"});
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["winding"].get<int>() == 1);
}

TEST_CASE("zeros finds the Remark-1 zero inside 2.5") {
    auto r = invoke({"zeros", "--q", "-0.4", "--n", "128", "--inside", "2.5"});
    REQUIRE(r.code == 0);
    auto doc = nlohmann::json::parse(r.out);
    REQUIRE(doc["roots"].size() == 1);
    CHECK(doc["roots"][0]["re"].get<double>() == doctest::Approx(1.9641527).epsilon(1e-5));
}

TEST_CASE("sweep emits one line per grid point and skips q = 0") {
    auto r = invoke({"sweep", "--q-min", "-0.5", "--q-max", "0.5", "--q-steps", "5"});
    CHECK(r.code == 0);
    int lines = 0;
    std::istringstream ss(r.out);
    std::string line;
    while (std::getline(ss, line)) {
        ++lines;
        check_against_schema("sweep", line);
        CHECK(nlohmann::json::parse(line)["q"].get<double>() != 0.0);
    }
    CHECK(lines == 4); // the q = 0 grid point is excluded
}

TEST_CASE("every subcommand validates against the shipped schema") {
    const std::vector<std::pair<std::string, std::vector<std::string>>> cases = {
        {"eval", {"eval", "--q", "0.5", "--x-re", "1"}},
        {"deriv", {"deriv", "--q", "0.5", "--x-re", "1"}},
        {"truncate", {"truncate", "--q", "0.5", "--x-re", "1", "--n", "3"}},
        {"certify-disk", {"certify-disk", "--q", "0.3"}},
        {"zeros", {"zeros", "--q", "-0.4", "--n", "64"}},
        {"track", {"track", "--q-start", "0.1", "--q-end", "0.1", "--seed-re", "-11", "--steps", "1"}},
        {"ek-bound", {"ek-bound", "--q", "0.5", "--n", "10"}},
        {"sqrt-disk", {"sqrt-disk", "--q", "0.4"}},
        {"tail-budget", {"tail-budget", "--q", "0.98", "--x-mod", "1.32", "--n", "100"}},
        {"triple-product", {"triple-product", "--q", "0.3", "--x-re", "2", "--x-im", "1"}},
        {"unity", {"unity", "--n", "8", "--k", "3", "--block"}},
        {"classify-image", {"classify-image", "--q", "-0.53"}},
        {"sample-image", {"sample-image", "--q", "0.2", "--resolution", "64", "--format", "json"}},
        {"nesting", {"nesting", "--q-inner", "0.2", "--q-outer", "0.7"}},
        {"threshold", {"threshold", "--feature", "right_inflections", "--q-lo", "-0.2", "--q-hi", "-0.53"}},
        {"hyperbola", {"hyperbola", "--resolution", "512"}},
    };
    for (const auto& [name, args] : cases) {
        CAPTURE(name);
        auto r = invoke(args);
        REQUIRE(r.code == 0);
        check_against_schema(name, r.out);
    }
}

TEST_CASE("csv sample output has the documented header") {
    auto r = invoke({"sample-image", "--q", "0.2", "--resolution", "64"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("phi,re,im,d_re,d_im,curvature\n", 0) == 0);
}

TEST_CASE("precision environment override") {
    auto before = invoke({"eval", "--q", "0.5", "--x-re", "1"});
    setenv("THETA_SCOPE_PRECISION", "extended", 1);
    auto after = invoke({"eval", "--q", "0.5", "--x-re", "1"});
    unsetenv("THETA_SCOPE_PRECISION");
    const auto tb_before = nlohmann::json::parse(before.out)["tail_bound"].get<double>();
    const auto tb_after = nlohmann::json::parse(after.out)["tail_bound"].get<double>();
    CHECK(tb_after < tb_before);
    CHECK(tb_after < 1e-28);
}

TEST_CASE("--out writes the same bytes to a file") {
    const std::string path = "cli_out_test.json";
    auto direct = invoke({"ek-bound", "--q", "0.5", "--n", "10"});
    auto filed = invoke({"ek-bound", "--q", "0.5", "--n", "10", "--out", path});
    CHECK(filed.out.empty());
    std::ifstream f(path);
    REQUIRE(f.good());
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str() == direct.out);
    f.close();
    std::remove(path.c_str());
}

} // TEST_SUITE
