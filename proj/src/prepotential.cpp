#include "g1f/prepotential.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <sstream>
#include <unordered_map>

namespace g1f {

namespace {

const cplx c0 = 1.0 / two_pi_i;

// Arguments of the gamma (or log eta) terms: first the t2 one, then the t5 one.
std::array<cplx, 2> modular_args(const StructureKind& k, const Point& t) {
    switch (k.kind) {
        case Kind::HoloS: return {two_pi_i * t[2], 0.0};
        case Kind::DoubleS: return {t[2] / t[5], two_pi_i * t[2] / (1.0 - two_pi_i * t[5])};
        case Kind::DoubleT: return {t[2] / t[5], (1.0 - two_pi_i * t[2]) / (two_pi_i * t[5])};
        case Kind::DoubleCombo:
            return {t[2] / t[5], (two_pi_i * t[2] - k.sigma) / (1.0 - two_pi_i * t[5])};
    }
    return {0.0, 0.0};
}

struct Singular {
    const char* name;
    cplx value;
};

std::vector<Singular> singular_quantities(const StructureKind& k, const Point& t, bool for_G) {
    std::vector<Singular> s;
    switch (k.kind) {
        case Kind::HoloS: break;
        case Kind::DoubleS:
            s = {{"t3", t[2]}, {"t6", t[5]}, {"2 pi i t6 - 1", two_pi_i * t[5] - 1.0}};
            break;
        case Kind::DoubleT: s = {{"t6", t[5]}}; break;
        case Kind::DoubleCombo:
            s = {{"t6", t[5]},
                 {"t3 - sigma t6", t[2] - k.sigma * t[5]},
                 {"2 pi i t6 - 1", two_pi_i * t[5] - 1.0}};
            break;
    }
    if (for_G) {
        s.push_back({"t2", t[1]});
        if (k.kind != Kind::HoloS) s.push_back({"t5", t[4]});
    }
    return s;
}

void check_point(const StructureKind& k, const Point& t, bool for_G,
                 const PrepotentialOptions& opt) {
    k.validate();
    if (static_cast<int>(t.size()) != k.dim()) {
        std::ostringstream os;
        os << kind_name(k.kind) << ": expected " << k.dim() << " flat coordinates, got "
           << t.size();
        throw domain_error(os.str());
    }
    double scale = 1.0;
    for (const cplx& x : t) {
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
            throw domain_error("non-finite flat coordinate");
        scale = std::max(scale, std::abs(x));
    }
    for (const auto& s : singular_quantities(k, t, for_G))
        if (std::abs(s.value) < opt.singularity_tolerance * scale)
            throw pole_error(std::string(for_G ? "G" : "F") + " is singular: " + s.name +
                             " vanishes (|" + s.name + "| = " + std::to_string(std::abs(s.value)) +
                             ")");
    const auto args = modular_args(k, t);
    const bool need[2] = {for_G || t[1] != 0.0, k.kind != Kind::HoloS && (for_G || t[4] != 0.0)};
    const char* which[2] = {"t2", "t5"};
    for (int i = 0; i < 2; ++i)
        if (need[i] && !(args[i].imag() > 0.0))
            throw domain_error(std::string("modular argument of the ") + which[i] +
                               " term leaves the upper half-plane (Im = " +
                               std::to_string(args[i].imag()) + ")");
}

template <class Gam>
std::pair<cplx, cplx> gamma_terms_impl(const StructureKind& k, const Point& t, Gam&& gam) {
    const cplx t2 = t[1], t3 = t[2];
    const auto args = modular_args(k, t);
    // a gamma term whose prefactor vanishes exactly is skipped, so t2 = 0 or t5 = 0 is allowed
    auto g = [&](int i, cplx pre) { return pre == 0.0 ? cplx{} : pre * gam(i, args[i]); };
    if (k.kind == Kind::HoloS) return {g(0, -(pi * I / 32.0) * std::pow(t2, 4)), 0.0};
    const cplx t5 = t[4], t6 = t[5];
    const cplx t24 = t2 * t2 * t2 * t2, t54 = t5 * t5 * t5 * t5;
    const cplx u = two_pi_i * t6 - 1.0;
    switch (k.kind) {
        case Kind::DoubleS:
            return {g(0, -t24 / (32.0 * 4.0 * pi * I * t6 * t6)), g(1, -t54 * pi * I / (32.0 * u * u))};
        case Kind::DoubleT:
            return {g(0, -t24 / (128.0 * pi * I * t6 * t6)), g(1, -t54 / (128.0 * pi * I * t6 * t6))};
        case Kind::DoubleCombo:
            return {g(0, -t24 / (64.0 * pi * I * t6 * t6)), g(1, -(pi * I / 16.0) * t54 / (u * u))};
        default: break;
    }
    (void)t3;
    return {0.0, 0.0};
}

cplx polynomial_part(const StructureKind& k, const Point& t) {
    const cplx t1 = t[0], t2 = t[1], t3 = t[2];
    if (k.kind == Kind::HoloS) return -0.25 * t1 * t2 * t2 + 0.5 * t1 * t1 * t3;
    const cplx t4 = t[3], t5 = t[4], t6 = t[5];
    const cplx t22 = t2 * t2, t52 = t5 * t5, t24 = t22 * t22, t54 = t52 * t52;
    switch (k.kind) {
        case Kind::DoubleS: {
            const cplx u = two_pi_i * t6 - 1.0;
            return -0.25 * t1 * t22 - 0.25 * t1 * t52 + 0.5 * t1 * t1 * t3 -
                   0.5 * t1 * t4 * (2.0 * t6 - c0) +
                   (0.25 * t22 * t4 * (t6 - c0) + 0.25 * t4 * t52 * t6 +
                    0.5 * t4 * t4 * t6 * (t6 - c0) + t22 * t52 / 16.0) / t3 +
                   t24 / 32.0 * (1.0 / t3 - c0 / (t3 * t6)) +
                   t54 / 32.0 * (1.0 / t3 + 1.0 / (t3 * u));
        }
        case Kind::DoubleT:
            return -0.25 * t1 * t22 - 0.25 * t1 * t52 + 0.5 * t1 * t4 * (2.0 * t3 - c0) -
                   0.5 * t1 * t1 * t6 - 0.5 * t3 * (t3 - c0) * t4 * t4 / t6 -
                   t22 * t52 / (16.0 * t6) - t24 / (32.0 * t6) + t3 * t4 * t52 / (4.0 * t6) -
                   t54 / (32.0 * t6) + (t3 - c0) * t4 * t22 / (4.0 * t6);
        case Kind::DoubleCombo: {
            const cplx sg = k.sigma, s14 = t1 + t4, d14 = t1 - t4;
            const cplx X = (t22 + t52) * t6 / 2.0 - t22 / (4.0 * pi * I) - s14 * t3 * t6 +
                           s14 * t3 * c0 + sg * d14 * t6 * t6 - sg * d14 * t6 * c0;
            return -t22 / (8.0 * pi * I * t6) * s14 - sg / (8.0 * pi * I) * (t1 * t1 - t4 * t4) +
                   t3 / (8.0 * pi * I * t6) * s14 * s14 +
                   pi * I / (2.0 * t6 * (t3 - sg * t6) * (two_pi_i * t6 - 1.0)) * X * X;
        }
        default: break;
    }
    return 0.0;
}

template <class Gam>
cplx eval_F_impl(const StructureKind& k, const Point& t, Gam&& gam) {
    const auto [a, b] = gamma_terms_impl(k, t, gam);
    return polynomial_part(k, t) + a + b;
}

cplx anchored_log(cplx x, const cplx* xa) {
    if (!xa) return std::log(x);
    return std::log(*xa) + std::log(x / *xa);
}

// Logarithmic (non-eta) arguments of G with their coefficients inside the bracket.
std::vector<std::pair<cplx, cplx>> g_logs(const StructureKind& k, const Point& t, GExponent ge) {
    if (k.kind == Kind::HoloS) return {{t[1], 0.125}};
    const cplx t3 = t[2], t6 = t[5];
    std::vector<std::pair<cplx, cplx>> v{{t[1] * t[4], 0.125}};
    switch (k.kind) {
        case Kind::DoubleS: v.push_back({two_pi_i * t3 / (t6 * (two_pi_i * t6 - 1.0)), 0.5}); break;
        case Kind::DoubleT: v.push_back({t6, ge == GExponent::Half ? -0.5 : -0.75}); break;
        case Kind::DoubleCombo:
            v.push_back({(t3 - k.sigma * t6) / (t6 * (1.0 - two_pi_i * t6)), 0.5});
            break;
        default: break;
    }
    return v;
}

}  // namespace

std::array<cplx, 2> modular_arguments(const StructureKind& k, const Point& t) {
    check_point(k, t, false, PrepotentialOptions{});
    return modular_args(k, t);
}

cplx eval_F(const StructureKind& k, const Point& t, const PrepotentialOptions& opt) {
    check_point(k, t, false, opt);
    return eval_F_impl(k, t, [&](int, cplx m) { return gamma_chazy(m, opt.series); });
}

std::pair<cplx, cplx> gamma_terms(const StructureKind& k, const Point& t,
                                  const PrepotentialOptions& opt) {
    check_point(k, t, false, opt);
    return gamma_terms_impl(k, t, [&](int, cplx m) { return gamma_chazy(m, opt.series); });
}

cplx eval_G(const StructureKind& k, const Point& t, GExponent ge, const Point* anchor,
            const PrepotentialOptions& opt) {
    check_point(k, t, true, opt);
    const auto args = modular_args(k, t);
    cplx s = log_dedekind_eta(args[0], opt.series);
    if (k.kind != Kind::HoloS) s += log_dedekind_eta(args[1], opt.series);
    const auto logs = g_logs(k, t, ge);
    std::vector<std::pair<cplx, cplx>> alogs;
    if (anchor) alogs = g_logs(k, *anchor, ge);
    for (std::size_t i = 0; i < logs.size(); ++i)
        s += logs[i].second * anchored_log(logs[i].first, anchor ? &alogs[i].first : nullptr);
    return -s;
}

void DerivativeEngine::validate() const {
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw domain_error("derivative radius must be positive");
    if (nodes < 16 || nodes > 4096 || (nodes & (nodes - 1)) != 0)
        throw domain_error("derivative nodes must be a power of 2 in [16, 4096]");
}

namespace {

struct Grid {
    std::vector<int> vars;
    int n = 0;
    double r = 0.0;
    std::vector<cplx> roots;   // exp(2 pi i j / n)
    std::vector<cplx> values;  // row-major over vars
};

Grid eval_grid(const Fn& f, const Point& p, std::vector<int> vars, double r, int n) {
    Grid g;
    g.vars = std::move(vars);
    g.n = n;
    g.r = r;
    g.roots.resize(n);
    for (int j = 0; j < n; ++j) g.roots[j] = std::polar(1.0, 2.0 * pi * j / n);
    const int m = static_cast<int>(g.vars.size());
    std::size_t total = 1;
    for (int i = 0; i < m; ++i) total *= n;
    g.values.resize(total);
    Point x = p;
    std::vector<int> idx(m, 0);
    for (std::size_t lin = 0; lin < total; ++lin) {
        for (int i = 0; i < m; ++i) x[g.vars[i]] = p[g.vars[i]] + r * g.roots[idx[i]];
        g.values[lin] = f(x);
        for (int i = m - 1; i >= 0; --i) {
            if (++idx[i] < n) break;
            idx[i] = 0;
        }
    }
    return g;
}

// Coefficient extraction: order[i] for grid variable i.
cplx grid_derivative(const Grid& g, const std::vector<int>& order) {
    const int m = static_cast<int>(g.vars.size());
    const int n = g.n;
    std::vector<int> idx(m, 0);
    cplx acc = 0.0;
    for (std::size_t lin = 0; lin < g.values.size(); ++lin) {
        int e = 0;
        for (int i = 0; i < m; ++i) e += order[i] * idx[i];
        acc += g.values[lin] * std::conj(g.roots[((e % n) + n) % n]);
        for (int i = m - 1; i >= 0; --i) {
            if (++idx[i] < n) break;
            idx[i] = 0;
        }
    }
    double fact = 1.0;
    int tot = 0;
    for (int o : order) {
        tot += o;
        for (int j = 2; j <= o; ++j) fact *= j;
    }
    return acc / static_cast<double>(g.values.size()) * fact / std::pow(g.r, tot);
}

// d^3/ds^3 f(p + s v) at s = 0
cplx directional3(const Fn& f, const Point& p, const std::vector<double>& v, double r, int n) {
    cplx acc = 0.0;
    Point x = p;
    for (int j = 0; j < n; ++j) {
        const cplx w = std::polar(1.0, 2.0 * pi * j / n);
        for (std::size_t a = 0; a < p.size(); ++a) x[a] = p[a] + r * w * v[a];
        acc += f(x) * std::pow(std::conj(w), 3);
    }
    return acc / static_cast<double>(n) * 6.0 / (r * r * r);
}

}  // namespace

cplx derivative(const Fn& f, const Point& p, const std::vector<int>& alpha,
                const DerivativeEngine& eng) {
    eng.validate();
    if (alpha.size() != p.size()) throw domain_error("multi-index length differs from dimension");
    std::vector<int> vars, order;
    int tot = 0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        if (alpha[i] < 0) throw domain_error("negative multi-index entry");
        if (alpha[i] > 0) {
            vars.push_back(static_cast<int>(i));
            order.push_back(alpha[i]);
            tot += alpha[i];
        }
    }
    if (tot > 3) throw domain_error("derivative order above 3 is not supported");
    if (tot == 0) return f(p);
    if (eng.cross == CrossScheme::MixedCentral && vars.size() > 1) {
        // polarization from directional third derivatives (total order 3 only)
        if (tot != 3) {
            // lower-order mixed derivatives: nested grid is cheap enough
            return grid_derivative(eval_grid(f, p, vars, eng.radius, eng.nodes), order);
        }
        auto dir = [&](std::vector<std::pair<int, double>> comps) {
            std::vector<double> v(p.size(), 0.0);
            for (auto [i, c] : comps) v[i] += c;
            return directional3(f, p, v, eng.radius, eng.nodes);
        };
        if (vars.size() == 3) {
            cplx s = 0.0;
            for (double a : {1.0, -1.0})
                for (double b : {1.0, -1.0})
                    s += a * b * dir({{vars[0], 1.0}, {vars[1], a}, {vars[2], b}});
            return s / 24.0;
        }
        const int x = order[0] == 2 ? vars[0] : vars[1];
        const int y = order[0] == 2 ? vars[1] : vars[0];
        cplx s = 0.0;
        for (double a : {1.0, -1.0}) s += a * dir({{x, 1.0}, {y, a}});
        return (s - 2.0 * dir({{y, 1.0}})) / 6.0;
    }
    return grid_derivative(eval_grid(f, p, vars, eng.radius, eng.nodes), order);
}

std::vector<cplx> gradient(const Fn& f, const Point& p, const DerivativeEngine& eng) {
    eng.validate();
    std::vector<cplx> g(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        std::vector<int> a(p.size(), 0);
        a[i] = 1;
        g[i] = derivative(f, p, a, eng);
    }
    return g;
}

double safe_radius(const StructureKind& k, const Point& p, double start, bool for_G) {
    const PrepotentialOptions opt;
    check_point(k, p, for_G, opt);
    const auto args0 = modular_args(k, p);
    const auto sing0 = singular_quantities(k, p, for_G);
    std::vector<int> vars = k.kind == Kind::HoloS ? std::vector<int>{1, 2}
                                                  : std::vector<int>{1, 2, 4, 5};
    const int na = 8;
    const bool need[2] = {for_G || p[1] != 0.0, k.kind != Kind::HoloS && (for_G || p[4] != 0.0)};
    const double keep = 0.6;
    for (double r = start; r > 1e-7; r /= 2.0) {
        bool ok = true;
        std::size_t total = 1;
        for (std::size_t i = 0; i < vars.size(); ++i) total *= na;
        Point x = p;
        for (std::size_t lin = 0; lin < total && ok; ++lin) {
            std::size_t rem = lin;
            for (int v : vars) {
                x[v] = p[v] + std::polar(r, 2.0 * pi * static_cast<double>(rem % na) / na);
                rem /= na;
            }
            const auto args = modular_args(k, x);
            for (int i = 0; i < 2; ++i)
                if (need[i] && args[i].imag() < keep * args0[i].imag()) ok = false;
            const auto sing = singular_quantities(k, x, for_G);
            for (std::size_t i = 0; i < sing.size(); ++i)
                if (std::abs(sing[i].value) < keep * std::abs(sing0[i].value)) ok = false;
        }
        if (ok) return r;
    }
    throw domain_error("no safe Cauchy radius: point is too close to a singular locus");
}

ThirdTensor third_tensor(const StructureKind& k, const Point& p, const DerivativeEngine& eng,
                         const PrepotentialOptions& opt) {
    eng.validate();
    check_point(k, p, false, opt);
    const int n = k.dim();
    const double r = safe_radius(k, p, eng.radius);
    DerivativeEngine e = eng;
    e.radius = r;

    // gamma values depend on (t3, t6) only; the grids revisit the same pairs many times
    struct Key {
        int i;
        std::uint64_t re, im;
        bool operator==(const Key&) const = default;
    };
    struct Hash {
        std::size_t operator()(const Key& k) const {
            return std::hash<std::uint64_t>()(k.re * 0x9e3779b97f4a7c15ULL ^ k.im) ^ k.i;
        }
    };
    std::unordered_map<Key, cplx, Hash> cache;
    auto gam = [&](int i, cplx m) {
        Key key{i, 0, 0};
        double re = m.real(), im = m.imag();
        std::memcpy(&key.re, &re, 8);
        std::memcpy(&key.im, &im, 8);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        const cplx v = gamma_chazy(m, opt.series);
        cache.emplace(key, v);
        return v;
    };
    const Fn f = [&](const Point& x) { return eval_F_impl(k, x, gam); };

    ThirdTensor out;
    out.radius = r;
    out.F.assign(n, Eigen::MatrixXcd::Zero(n, n));
    auto put = [&](int a, int b, int c, cplx v) {
        const int s[3] = {a, b, c};
        int q[3] = {0, 1, 2};
        do {
            out.F[s[q[0]]](s[q[1]], s[q[2]]) = v;
        } while (std::next_permutation(q, q + 3));
    };
    double diff = 0.0;
    if (eng.cross == CrossScheme::NestedCauchy) {
        for (int a = 0; a < n; ++a)
            put(a, a, a, grid_derivative(eval_grid(f, p, {a}, r, e.nodes), {3}));
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) {
                const Grid g = eval_grid(f, p, {a, b}, r, e.nodes);
                put(a, a, b, grid_derivative(g, {2, 1}));
                put(a, b, b, grid_derivative(g, {1, 2}));
            }
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                for (int c = b + 1; c < n; ++c) {
                    const Grid g = eval_grid(f, p, {a, b, c}, r, e.nodes);
                    put(a, b, c, grid_derivative(g, {1, 1, 1}));
                    // the same grid also sees the two-variable entries: cross-check them
                    const std::array<std::pair<std::array<int, 3>, std::array<int, 3>>, 3> chk{{
                        {{2, 1, 0}, {a, a, b}}, {{0, 2, 1}, {b, b, c}}, {{1, 0, 2}, {a, c, c}}}};
                    for (const auto& [ord, ent] : chk) {
                        const cplx v = grid_derivative(g, {ord[0], ord[1], ord[2]});
                        diff = std::max(diff, std::abs(v - out.F[ent[0]](ent[1], ent[2])));
                    }
                }
    } else {
        for (int a = 0; a < n; ++a)
            for (int b = a; b < n; ++b)
                for (int c = b; c < n; ++c) {
                    std::vector<int> alpha(n, 0);
                    ++alpha[a];
                    ++alpha[b];
                    ++alpha[c];
                    put(a, b, c, derivative(f, p, alpha, e));
                }
        // polarized aab versus a nested two-variable grid
        for (int a = 0; a + 1 < n; ++a) {
            const Grid g = eval_grid(f, p, {a, a + 1}, r, e.nodes);
            diff = std::max(diff, std::abs(grid_derivative(g, {2, 1}) - out.F[a](a, a + 1)));
        }
    }
    double scale = 0.0;
    for (const auto& m : out.F) scale = std::max(scale, m.cwiseAbs().maxCoeff());
    out.symmetry_residual = diff / std::max(1.0, scale);
    return out;
}

}  // namespace g1f
