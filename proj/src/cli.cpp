#include "g1f/cli.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "g1f/fixtures.hpp"

namespace g1f {

namespace {

constexpr const char* kSchemaVersion = "1.0";

struct Scanner {
    const std::string& s;
    std::size_t pos;
    std::size_t col_offset;

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool done() {
        skip();
        return pos >= s.size();
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw usage_error("malformed complex literal '" + s + "' at column " +
                          std::to_string(pos + 1 + col_offset) + ": " + what);
    }
};

cplx parse_complex_at(const std::string& s, std::size_t col_offset) {
    Scanner sc{s, 0, col_offset};
    double re = 0.0, im = 0.0;
    bool have_re = false, have_im = false;
    int terms = 0;
    while (!sc.done()) {
        double sign = 1.0;
        if (s[sc.pos] == '+' || s[sc.pos] == '-') {
            sign = s[sc.pos] == '-' ? -1.0 : 1.0;
            ++sc.pos;
            sc.skip();
        } else if (terms > 0) {
            sc.fail("expected '+' or '-' between terms");
        }
        if (sc.pos >= s.size()) sc.fail("dangling sign");
        double mag = 1.0;
        bool number = false;
        const char c = s[sc.pos];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            // strtod alone would also take "inf", "nan" and hex
            std::size_t end = sc.pos;
            while (end < s.size() && (std::isdigit(static_cast<unsigned char>(s[end])) || s[end] == '.'))
                ++end;
            if (end < s.size() && (s[end] == 'e' || s[end] == 'E')) {
                std::size_t e = end + 1;
                if (e < s.size() && (s[e] == '+' || s[e] == '-')) ++e;
                if (e < s.size() && std::isdigit(static_cast<unsigned char>(s[e]))) {
                    while (e < s.size() && std::isdigit(static_cast<unsigned char>(s[e]))) ++e;
                    end = e;
                }
            }
            const std::string tok = s.substr(sc.pos, end - sc.pos);
            char* stop = nullptr;
            mag = std::strtod(tok.c_str(), &stop);
            if (stop != tok.c_str() + tok.size() || tok == ".") sc.fail("bad number '" + tok + "'");
            sc.pos = end;
            number = true;
            sc.skip();
        }
        bool imag = false;
        if (sc.pos < s.size() && s[sc.pos] == 'i') {
            imag = true;
            ++sc.pos;
        } else if (sc.pos < s.size() && s[sc.pos] == '*') {
            sc.fail("write '2i', not '2*i'");
        }
        if (!number && !imag) sc.fail("expected a number or 'i'");
        if (imag) {
            if (have_im) sc.fail("second imaginary part");
            have_im = true;
            im = sign * mag;
        } else {
            if (have_re || have_im) sc.fail(have_re ? "second real part" : "real part after imaginary part");
            have_re = true;
            re = sign * mag;
        }
        if (++terms > 2) sc.fail("too many terms");
        sc.skip();
        if (sc.pos < s.size() && s[sc.pos] != '+' && s[sc.pos] != '-')
            sc.fail(std::string("unexpected character '") + s[sc.pos] + "'");
    }
    if (terms == 0) sc.fail("empty literal");
    return {re, im};
}

std::string num17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

nlohmann::ordered_json cjson(cplx z) { return {{"re", num17(z.real())}, {"im", num17(z.imag())}}; }

std::string cstr(cplx z) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "%.15g%+.15gi", z.real(), z.imag());
    return buf;
}

const char* scheme_name(CrossScheme c) {
    return c == CrossScheme::NestedCauchy ? "nested_cauchy" : "mixed_central";
}

nlohmann::ordered_json engine_json(const DerivativeEngine& e) {
    return {{"radius", num17(e.radius)}, {"nodes", e.nodes}, {"cross_scheme", scheme_name(e.cross)}};
}

nlohmann::ordered_json kind_json(const StructureKind& k) {
    nlohmann::ordered_json j = {{"kind", kind_name(k.kind)}};
    if (k.kind == Kind::DoubleCombo) j["sigma"] = cjson(k.sigma);
    return j;
}

nlohmann::ordered_json report_to_json(const VerificationReport& r) {
    nlohmann::ordered_json j;
    j["check_name"] = r.check_name;
    j["kind"] = r.kind_specific ? kind_json(r.kind) : nlohmann::ordered_json();
    if (r.branch) {
        j["branch_points"] = nlohmann::ordered_json::array();
        for (cplx l : r.branch->lambda) j["branch_points"].push_back(cjson(l));
    }
    if (!r.point.empty()) {
        j["point"] = nlohmann::ordered_json::array();
        for (cplx t : r.point) j["point"].push_back(cjson(t));
    }
    j["residuals"] = nlohmann::ordered_json::object();
    for (const auto& [n, v] : r.residuals) j["residuals"][n] = num17(v);
    j["tolerance"] = num17(r.tolerance);
    if (!r.tolerance_overrides.empty()) {
        j["tolerance_overrides"] = nlohmann::ordered_json::object();
        for (const auto& [n, v] : r.tolerance_overrides) j["tolerance_overrides"][n] = num17(v);
    }
    j["passed"] = r.passed;
    j["engine_config"] = engine_json(r.engine);
    j["seed"] = r.seed;
    j["warnings"] = r.warnings;
    j["notes"] = r.notes;
    return j;
}

std::string kind_label(const StructureKind& k) {
    std::string s = kind_name(k.kind);
    if (k.kind == Kind::DoubleCombo) s += "(sigma=" + cstr(k.sigma) + ")";
    return s;
}

}  // namespace

cplx parse_complex(const std::string& s) { return parse_complex_at(s, 0); }

std::vector<cplx> parse_point(const std::string& s) {
    std::vector<cplx> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = s.find(',', start);
        const std::string piece = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        out.push_back(parse_complex_at(piece, start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

std::string format_residual(double v) { return num17(v); }

std::string report_json(const RunConfig& cfg, const std::vector<VerificationReport>& reports) {
    nlohmann::ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = cfg.command;
    nlohmann::ordered_json c;
    c["kinds"] = nlohmann::ordered_json::array();
    for (const auto& k : cfg.kinds) c["kinds"].push_back(kind_json(k));
    c["seed"] = cfg.seed;
    c["samples"] = cfg.samples;
    c["engine"] = engine_json(cfg.engine);
    c["tolerances"] = {{"wdvv", num17(cfg.tol.wdvv)},
                       {"euler", num17(cfg.tol.euler)},
                       {"scaling", num17(cfg.tol.scaling)},
                       {"getzler", num17(cfg.tol.getzler)},
                       {"f1", num17(cfg.tol.f1)},
                       {"finite_difference", num17(cfg.tol.finite_difference)},
                       {"h_quarter", num17(cfg.tol.h_quarter)},
                       {"realness", num17(cfg.tol.realness)},
                       {"structure", num17(cfg.tol.structure)},
                       {"unit_field", num17(cfg.tol.unit_field)}};
    doc["config"] = c;
    doc["checks"] = nlohmann::ordered_json::array();
    int passed = 0;
    nlohmann::ordered_json failed = nlohmann::ordered_json::array();
    for (const auto& r : reports) {
        doc["checks"].push_back(report_to_json(r));
        if (r.passed) {
            ++passed;
        } else {
            failed.push_back(r.kind_specific ? r.check_name + " [" + kind_label(r.kind) + "]" : r.check_name);
        }
    }
    doc["summary"] = {{"total", reports.size()},
                      {"passed", passed},
                      {"failed", static_cast<int>(reports.size()) - passed},
                      {"failed_checks", failed},
                      {"all_passed", passed == static_cast<int>(reports.size())}};
    return doc.dump(2) + "\n";
}

std::string report_csv(const std::vector<VerificationReport>& reports) {
    std::ostringstream os;
    os << "index,check_name,kind,seed,residual,value,tolerance,passed\n";
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& r = reports[i];
        for (const auto& [n, v] : r.residuals)
            os << i << ',' << r.check_name << ',' << (r.kind_specific ? kind_name(r.kind.kind) : "") << ',' << r.seed << ',' << n
               << ',' << num17(v) << ',' << num17(r.tolerance_for(n)) << ','
               << (v <= r.tolerance_for(n) ? "true" : "false") << '\n';
    }
    return os.str();
}

std::string report_text(const std::vector<VerificationReport>& reports) {
    std::ostringstream os;
    int passed = 0;
    for (const auto& r : reports) {
        os << (r.passed ? "[PASS] " : "[FAIL] ") << r.check_name;
        if (r.kind_specific) os << "  " << kind_label(r.kind);
        if (r.branch) {
            os << "  branch (";
            for (int i = 0; i < 3; ++i) os << (i ? ", " : "") << cstr(r.branch->lambda[i]);
            os << ")";
        }
        os << '\n';
        for (const auto& [n, v] : r.residuals) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "    %-32s %.3e  (tol %.0e)%s\n", n.c_str(), v, r.tolerance_for(n),
                          v <= r.tolerance_for(n) ? "" : "  <-- exceeds");
            os << buf;
        }
        for (const auto& w : r.warnings) os << "    warning: " << w << '\n';
        for (const auto& n : r.notes) os << "    note: " << n << '\n';
        passed += r.passed;
    }
    os << passed << "/" << reports.size() << " checks passed\n";
    return os.str();
}

namespace {

Format parse_format(const std::string& f) {
    if (f == "json") return Format::Json;
    if (f == "csv") return Format::Csv;
    if (f == "text") return Format::Text;
    throw usage_error("unknown format '" + f + "' (json, csv, text)");
}

std::vector<StructureKind> parse_kinds(const std::string& k, const std::string& sigma) {
    const cplx sg = parse_complex(sigma);
    std::vector<StructureKind> out;
    if (k == "all") {
        for (Kind x : {Kind::HoloS, Kind::DoubleS, Kind::DoubleT, Kind::DoubleCombo}) out.push_back({x, sg});
    } else {
        try {
            out.push_back({parse_kind(k), sg});
        } catch (const domain_error& e) {
            throw usage_error(e.what());
        }
    }
    for (const auto& s : out) s.validate();
    return out;
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
    if (cfg.output_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(cfg.output_path);
    if (!f) throw usage_error("cannot write " + cfg.output_path);
    f << text;
}

std::string render(const RunConfig& cfg, const std::vector<VerificationReport>& reports) {
    switch (cfg.format) {
        case Format::Json: return report_json(cfg, reports);
        case Format::Csv: return report_csv(reports);
        case Format::Text: return report_text(reports);
    }
    return {};
}

int verdict(const std::vector<VerificationReport>& reports) {
    for (const auto& r : reports)
        if (!r.passed) return 1;
    return 0;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Genus-one Hurwitz Frobenius manifolds: evaluation and numerical verification"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string kind = "all", sigma = "1", format = "text", cross = "nested";
    std::string point, what = "F", gexp = "1/2", branch = "1,0,-1", check = "all";
    double step = 1e-4;
    bool no_kernels = false, no_robust = false;

    auto add_engine = [&](CLI::App* s) {
        s->add_option("--radius", cfg.engine.radius, "Cauchy radius cap (shrunk automatically)");
        s->add_option("--nodes", cfg.engine.nodes, "quadrature nodes per circle (power of 2, >= 16)");
        s->add_option("--cross", cross, "mixed partials: nested or mixed-central");
    };

    auto* verify = app.add_subcommand("verify", "run the verification suite");
    verify->add_option("--kind", kind, "holo-s, double-s, double-t, double-combo or all");
    verify->add_option("--sigma", sigma, "double-combo parameter, e.g. \"1\" or \"0.5+0.2i\"");
    verify->add_option("--samples", cfg.samples, "seeded sample points per kind")->check(CLI::PositiveNumber);
    verify->add_option("--seed", cfg.seed, "sampling seed");
    verify->add_option("--format", format, "json, csv or text");
    verify->add_option("--output,-o", cfg.output_path, "write the report here instead of stdout");
    verify->add_option("--tol-wdvv", cfg.tol.wdvv, "WDVV / associativity tolerance");
    verify->add_option("--tol-euler", cfg.tol.euler, "Euler tolerance");
    verify->add_option("--tol-getzler", cfg.tol.getzler, "Getzler tolerance");
    verify->add_option("--tol-fd", cfg.tol.finite_difference, "finite-difference kernel tolerance");
    verify->add_flag("--no-kernels", no_kernels, "skip the branch-point kernel checks");
    verify->add_flag("--no-robustness", no_robust, "skip node-doubling / radius-halving");
    add_engine(verify);

    auto* eval = app.add_subcommand("eval", "evaluate F, G or their derivatives at a point");
    eval->add_option("--kind", kind, "structure kind")->required();
    eval->add_option("--sigma", sigma, "double-combo parameter");
    eval->add_option("--point", point, "comma-separated flat coordinates, e.g. \"1,0,0.159i\"")->required();
    eval->add_option("--what", what, "F, G, grad-F, grad-G, third, gamma-terms");
    eval->add_option("--g-exponent", gexp, "double-t power of t6 in G: 1/2 or 3/4");
    eval->add_option("--format", format, "json or text");
    eval->add_option("--output,-o", cfg.output_path, "output file");
    add_engine(eval);

    auto* kern = app.add_subcommand("kernels", "kernel identities at a branch triple");
    kern->add_option("--branch", branch, "three branch points, e.g. \"1,0,-1\"");
    kern->add_option("--check", check, "flatness, rauch, tau, structure or all");
    kern->add_option("--step", step, "finite-difference step, relative to the branch scale");
    kern->add_option("--kind", kind, "kind for the structure check (all: every kind)");
    kern->add_option("--sigma", sigma, "double-combo parameter");
    kern->add_option("--format", format, "json, csv or text");
    kern->add_option("--output,-o", cfg.output_path, "output file");

    auto* fix = app.add_subcommand("fixtures", "compare library values with the fixture file");
    std::string fixture_file;
    std::string write_path;
    double fix_tol = 1e-12;
    fix->add_option("--file", fixture_file, "fixture file (default: $G1FROB_FIXTURES or the bundled one)");
    fix->add_option("--write", write_path, "also write the library's own values in fixture format");
    fix->add_option("--tol", fix_tol, "relative agreement tolerance");
    fix->add_option("--format", format, "json, csv or text");
    fix->add_option("--output,-o", cfg.output_path, "output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        cfg.format = parse_format(format);
        if (cross == "nested") {
            cfg.engine.cross = CrossScheme::NestedCauchy;
        } else if (cross == "mixed-central") {
            cfg.engine.cross = CrossScheme::MixedCentral;
        } else {
            throw usage_error("unknown --cross '" + cross + "' (nested, mixed-central)");
        }
        cfg.engine.validate();

        if (verify->parsed()) {
            cfg.command = "verify";
            cfg.kinds = parse_kinds(kind, sigma);
            SuiteOptions opt;
            opt.samples = cfg.samples;
            opt.seed = cfg.seed;
            opt.engine = cfg.engine;
            opt.tol = cfg.tol;
            opt.kernels = !no_kernels;
            opt.robustness = !no_robust;
            std::vector<VerificationReport> all;
            for (const auto& k : cfg.kinds) {
                // kernel checks do not depend on the kind: run them once
                opt.kernels = !no_kernels && &k == &cfg.kinds.front();
                auto r = run_suite(k, opt);
                all.insert(all.end(), r.begin(), r.end());
            }
            emit(cfg, render(cfg, all), out);
            return verdict(all);
        }

        if (eval->parsed()) {
            cfg.command = "eval";
            cfg.kinds = parse_kinds(kind, sigma);
            if (cfg.kinds.size() != 1) throw usage_error("eval needs a single --kind");
            if (cfg.format == Format::Csv) throw usage_error("eval supports json and text");
            const StructureKind k = cfg.kinds.front();
            const Point p = parse_point(point);
            if (static_cast<int>(p.size()) != k.dim())
                throw usage_error(kind_name(k.kind) + " takes " + std::to_string(k.dim()) + " coordinates, got " +
                                  std::to_string(p.size()));
            GExponent ge;
            if (gexp == "1/2") {
                ge = GExponent::Half;
            } else if (gexp == "3/4") {
                ge = GExponent::ThreeQuarters;
            } else {
                throw usage_error("--g-exponent must be 1/2 or 3/4");
            }
            nlohmann::ordered_json res;
            std::ostringstream txt;
            if (what == "F") {
                const cplx v = eval_F(k, p);
                res["F"] = cjson(v);
                txt << "F = " << cstr(v) << '\n';
            } else if (what == "G") {
                const cplx v = eval_G(k, p, ge);
                res["G"] = cjson(v);
                res["branch"] = "principal logarithms, additive constant 0";
                txt << "G = " << cstr(v) << "   (principal logarithms, additive constant 0)\n";
            } else if (what == "grad-F" || what == "grad-G") {
                const bool isG = what == "grad-G";
                DerivativeEngine e = cfg.engine;
                e.radius = safe_radius(k, p, e.radius, isG);
                const Fn f = isG ? Fn([&](const Point& x) { return eval_G(k, x, ge, &p); })
                                 : Fn([&](const Point& x) { return eval_F(k, x); });
                const auto g = gradient(f, p, e);
                res[what] = nlohmann::ordered_json::array();
                for (std::size_t a = 0; a < g.size(); ++a) {
                    res[what].push_back(cjson(g[a]));
                    txt << "d/dt" << a + 1 << " = " << cstr(g[a]) << '\n';
                }
                res["radius"] = num17(e.radius);
            } else if (what == "third") {
                const ThirdTensor T = third_tensor(k, p, cfg.engine);
                res["third"] = nlohmann::ordered_json::array();
                for (int i = 0; i < k.dim(); ++i) {
                    nlohmann::ordered_json m = nlohmann::ordered_json::array();
                    txt << "F_" << i + 1 << ":\n";
                    for (int l = 0; l < k.dim(); ++l) {
                        nlohmann::ordered_json row = nlohmann::ordered_json::array();
                        txt << "   ";
                        for (int n = 0; n < k.dim(); ++n) {
                            row.push_back(cjson(T.F[i](l, n)));
                            char buf[64];
                            std::snprintf(buf, sizeof buf, " %11.4e%+11.4ei", T.F[i](l, n).real(), T.F[i](l, n).imag());
                            txt << buf;
                        }
                        txt << '\n';
                        m.push_back(row);
                    }
                    res["third"].push_back(m);
                }
                res["symmetry_residual"] = num17(T.symmetry_residual);
                res["radius"] = num17(T.radius);
                txt << "symmetry residual " << num17(T.symmetry_residual) << ", radius " << num17(T.radius) << '\n';
            } else if (what == "gamma-terms") {
                const auto [a, b] = gamma_terms(k, p);
                res["gamma_terms"] = {cjson(a), cjson(b)};
                txt << "t2 term = " << cstr(a) << "\nt5 term = " << cstr(b) << '\n';
            } else {
                throw usage_error("unknown --what '" + what + "'");
            }
            if (cfg.format == Format::Json) {
                nlohmann::ordered_json doc;
                doc["schema_version"] = kSchemaVersion;
                doc["command"] = "eval";
                doc["config"] = {{"kind", kind_json(k)}, {"what", what}, {"engine", engine_json(cfg.engine)}};
                doc["point"] = nlohmann::ordered_json::array();
                for (cplx t : p) doc["point"].push_back(cjson(t));
                doc["result"] = res;
                emit(cfg, doc.dump(2) + "\n", out);
            } else {
                emit(cfg, txt.str(), out);
            }
            return 0;
        }

        if (kern->parsed()) {
            cfg.command = "kernels";
            const auto pts = parse_point(branch);
            if (pts.size() != 3) throw usage_error("--branch takes exactly three points");
            const BranchTriple b{{pts[0], pts[1], pts[2]}};
            FdOptions fd;
            fd.step = step;
            if (!(step > 0.0)) throw usage_error("--step must be positive");
            std::vector<VerificationReport> reps;
            const bool any = check == "all";
            if (!any && check != "flatness" && check != "rauch" && check != "tau" && check != "structure")
                throw usage_error("unknown --check '" + check + "'");
            if (any || check == "flatness") reps.push_back(flatness_check(b, fd, cfg.tol));
            if (any || check == "rauch") reps.push_back(rauch_check(b, fd, cfg.tol));
            if (any || check == "tau") reps.push_back(tau_relation_check(b, fd, cfg.tol));
            if (any || check == "structure") {
                cfg.kinds = parse_kinds(kind, sigma);
                for (const auto& k : cfg.kinds) reps.push_back(structure_check(b, k, std::nullopt, cfg.tol));
            }
            emit(cfg, render(cfg, reps), out);
            return verdict(reps);
        }

        if (fix->parsed()) {
            cfg.command = "fixtures";
            const std::string path = fixture_file.empty() ? fixture_path() : fixture_file;
            const FixtureMap oracle = load_fixtures(path);
            const FixtureMap lib = library_fixture_values();
            VerificationReport r;
            r.check_name = "fixture_agreement";
            r.tolerance = fix_tol;
            r.notes.push_back("fixture file: " + path);
            for (const auto& [name, v] : oracle) {
                const auto it = lib.find(name);
                if (it == lib.end()) {
                    r.warnings.push_back("no library value for fixture " + name);
                    continue;
                }
                r.residuals[name] = std::abs(it->second - v) / std::max(1.0, std::abs(v));
            }
            r.finalize();
            if (!write_path.empty()) write_fixtures(write_path, lib);
            emit(cfg, render(cfg, {r}), out);
            return verdict({r});
        }
    } catch (const usage_error& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const domain_error& e) {
        err << "domain error: " << e.what() << '\n';
        return 2;
    } catch (const precision_error& e) {
        err << "precision error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

}  // namespace g1f
