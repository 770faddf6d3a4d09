#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "support.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "g1f/cli.hpp"

using namespace g1f;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result call(std::vector<std::string> args) {
    args.insert(args.begin(), "g1frob");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out, err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string usage_message(const std::string& lit) {
    try {
        parse_complex(lit);
    } catch (const usage_error& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("complex literals") {
    CHECK(parse_complex("1") == cplx{1.0, 0.0});
    CHECK(parse_complex("2.5i") == cplx{0.0, 2.5});
    CHECK(parse_complex("-i") == cplx{0.0, -1.0});
    CHECK(parse_complex(" 1.5 - 2i ") == cplx{1.5, -2.0});
    CHECK(parse_complex("0.0+0.159154943i") == cplx{0.0, 0.159154943});
    CHECK(parse_complex("1e-3+2E2i") == cplx{1e-3, 200.0});
    CHECK(parse_complex("i") == cplx{0.0, 1.0});
}

TEST_CASE("malformed literals report a column") {
    CHECK(usage_message("0.1x").find("column 4") != std::string::npos);
    CHECK(usage_message("1+").find("column") != std::string::npos);
    CHECK_THROWS_AS(parse_complex(""), usage_error);
    CHECK_THROWS_AS(parse_complex("1 2"), usage_error);
    CHECK_THROWS_AS(parse_complex("nan"), usage_error);
    CHECK_THROWS_AS(parse_complex("1+2i+3i"), usage_error);
    try {
        parse_point("1,0,0.1x");
        FAIL("no throw");
    } catch (const usage_error& e) {
        CHECK(std::string(e.what()).find("column 8") != std::string::npos);
    }
    CHECK(parse_point("1, 0, -1").size() == 3);
}

TEST_CASE("exit codes") {
    const Result ok = call({"eval", "--kind", "holo-s", "--point", "1,0,0.0+0.159154943i", "--what", "F"});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("F = 0+0.0795774715") != std::string::npos);
    CHECK(call({"eval", "--kind", "holo-s", "--point", "1,0,0.1x"}).code == 2);
    CHECK(call({"eval", "--kind", "holo-q", "--point", "1,0,1"}).code == 2);
    CHECK(call({"eval", "--kind", "holo-s", "--point", "1,1,-0.2"}).code == 2);  // gamma argument below the axis
    CHECK(call({"verify", "--samples", "0"}).code == 2);
    CHECK(call({"frobnicate"}).code == 2);
    CHECK(call({"kernels", "--branch", "1,0,-1", "--check", "flatness"}).code == 0);
    // the combo unit-field response is a known failure of its structure map
    CHECK(call({"kernels", "--branch", "1,0,-1", "--check", "structure", "--kind", "double-combo"}).code == 1);
    CHECK(call({"fixtures"}).code == 0);
}

TEST_CASE("JSON report schema and determinism") {
    const std::vector<std::string> args{"verify", "--kind", "holo-s", "--samples", "2", "--seed", "7",
                                        "--format", "json", "--no-robustness"};
    const Result a = call(args), b = call(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    const auto doc = nlohmann::json::parse(a.out);
    CHECK(doc.at("schema_version") == "1.0");
    CHECK(doc.at("command") == "verify");
    CHECK(doc.at("config").at("seed") == 7);
    CHECK(doc.at("summary").at("all_passed") == true);
    REQUIRE(doc.at("checks").size() > 5);
    const auto& first = doc.at("checks").at(0);
    CHECK(first.contains("check_name"));
    CHECK(first.contains("residuals"));
    // residuals are 17-digit decimal strings
    for (const auto& [name, v] : first.at("residuals").items()) CHECK(v.is_string());
}

TEST_CASE("CSV and file output") {
    const auto path = std::filesystem::temp_directory_path() / "g1frob_test_report.csv";
    const Result r = call({"kernels", "--branch", "1,0,-1", "--check", "tau", "--format", "csv", "-o", path.string()});
    CHECK(r.code == 0);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "index,check_name,kind,seed,residual,value,tolerance,passed");
    std::filesystem::remove(path);
}

TEST_CASE("residual formatting") {
    CHECK(format_residual(0.1) == "0.10000000000000001");
    CHECK(format_residual(0.0) == "0");
}
