#include "g1f/fixtures.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include <json.hpp>

#include "g1f/prepotential.hpp"

#ifndef G1FROB_DEFAULT_FIXTURES
#define G1FROB_DEFAULT_FIXTURES "data/fixtures.json"
#endif

namespace g1f {

std::string fixture_path() {
    if (const char* env = std::getenv("G1FROB_FIXTURES"); env && *env) return env;
    return G1FROB_DEFAULT_FIXTURES;
}

namespace {

double parse_decimal(const nlohmann::json& j, const std::string& name) {
    if (!j.is_string()) throw domain_error("fixture " + name + ": expected a decimal string");
    const std::string s = j.get<std::string>();
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != s.size() || s.empty()) throw domain_error("fixture " + name + ": bad number '" + s + "'");
    return v;
}

std::string digits17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

const char* const kPointS[6][2] = {{"0.3", "0.1"},   {"0.7", "-0.2"}, {"0.09", "0.02"},
                                   {"0.45", "-0.05"}, {"0.4", "0.2"},  {"0.03", "-0.08"}};
const char* const kPointT[6][2] = {{"0.2", "-0.1"}, {"0.1", "-0.4"}, {"0.05", "-0.08"},
                                   {"0.3", "0.1"},  {"0.2", "0.35"}, {"-0.09", "0.01"}};

Point fixed_point(const char* const p[6][2]) {
    Point t(6);
    for (int i = 0; i < 6; ++i) t[i] = {std::stod(p[i][0]), std::stod(p[i][1])};
    return t;
}

}  // namespace

FixtureMap load_fixtures(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw domain_error("cannot open fixture file " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw domain_error("fixture file " + path + ": " + e.what());
    }
    if (!doc.contains("values") || !doc["values"].is_object())
        throw domain_error("fixture file " + path + ": missing \"values\" object");
    FixtureMap out;
    for (const auto& [name, v] : doc["values"].items())
        out[name] = {parse_decimal(v.at("re"), name), parse_decimal(v.at("im"), name)};
    return out;
}

void write_fixtures(const std::string& path, const FixtureMap& values) {
    nlohmann::ordered_json doc;
    doc["format"] = "name -> {re, im}, 17 significant digits";
    doc["generator"] = "g1frob fixtures (double precision library values)";
    for (const auto& [name, v] : values)
        doc["values"][name] = {{"re", digits17(v.real())}, {"im", digits17(v.imag())}};
    std::ofstream out(path);
    if (!out) throw domain_error("cannot write " + path);
    out << doc.dump(1) << "\n";
}

FixtureMap library_fixture_values() {
    FixtureMap f;
    f["T1P_I"] = theta1(0.0, I, 1);
    f["ETA_I"] = dedekind_eta(I);
    f["GAMMA_I"] = gamma_chazy(I);
    f["GAMMA_PT"] = gamma_chazy({0.2, 0.9});
    f["RF_012"] = carlson_rf(0.0, 1.0, 2.0);
    const TorusCovering lem = covering_from_branch_points(BranchTriple{{cplx{1.0}, cplx{0.0}, cplx{-1.0}}});
    f["OMEGA_LEMN"] = lem.omega;
    f["ETA1_LEMN"] = lem.eta1;
    const RotationData rot = rotation_data(lem);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            if (i != j) f["ROT_LEMN_" + std::to_string(i) + std::to_string(j)] = rot.beta[i][j];
    for (int i = 0; i < 3; ++i) f["S_LEMN_" + std::to_string(i)] = rot.s_diag[i];
    f["F_S_PT1"] = eval_F(StructureKind{Kind::DoubleS}, fixed_point(kPointS));
    f["F_T_PT1"] = eval_F(StructureKind{Kind::DoubleT}, fixed_point(kPointT));
    f["G_T_PT1"] = eval_G(StructureKind{Kind::DoubleT}, fixed_point(kPointT));
    return f;
}

}  // namespace g1f
