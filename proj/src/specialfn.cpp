#include "g1f/specialfn.hpp"

#include <algorithm>
#include <cmath>

namespace g1f {

namespace {

void require_uhp(cplx mu, const char* who) {
    if (!(mu.imag() > 0.0) || !std::isfinite(mu.real()) || !std::isfinite(mu.imag()))
        throw domain_error(std::string(who) + ": modulus must lie in the upper half-plane");
}

// sum_{n>=0} (-1)^n q^{n(n+1)} (2n+1)^k for k = 1, 3; theta_1^(k)(0) up to the factor 2 q^{1/4}.
std::pair<cplx, cplx> theta_odd_moments(cplx mu, const SeriesConfig& cfg) {
    const double aq = std::exp(-pi * mu.imag());
    cplx s1 = 0.0, s3 = 0.0;
    for (int n = 0;; ++n) {
        if (n >= cfg.max_terms) throw precision_error("theta series: max_terms exhausted");
        const double m = 2.0 * n + 1.0;
        const double bound = std::pow(aq, double(n) * (n + 1)) * m * m * m;
        if (n > 0 && bound < cfg.tail_tolerance * std::max(1.0, std::abs(s3))) break;
        const cplx qp = std::exp(I * pi * mu * double(n) * double(n + 1));
        const double sgn = (n % 2) ? -1.0 : 1.0;
        s1 += sgn * m * qp;
        s3 += sgn * m * m * m * qp;
    }
    return {s1, s3};
}

cplx gamma_series(cplx mu, const SeriesConfig& cfg) {
    auto [s1, s3] = theta_odd_moments(mu, cfg);
    // theta''' / theta' = -s3 / s1
    return (pi * I / 3.0) * s3 / s1;
}

cplx log_eta_series(cplx mu, const SeriesConfig& cfg) {
    // pentagonal series for prod(1 - q^{2n}); close to 1 here, so the principal log is the right branch
    const double aq = std::exp(-pi * mu.imag());
    cplx p = 1.0;
    for (int n = 1;; ++n) {
        if (n >= cfg.max_terms) throw precision_error("eta series: max_terms exhausted");
        const double e1 = double(n) * (3.0 * n - 1.0), e2 = double(n) * (3.0 * n + 1.0);
        if (std::pow(aq, e1) < cfg.tail_tolerance) break;
        const double sgn = (n % 2) ? -1.0 : 1.0;
        p += sgn * (std::exp(I * pi * mu * e1) + std::exp(I * pi * mu * e2));
    }
    return I * pi * mu / 12.0 + std::log(p);
}

}  // namespace

void SeriesConfig::validate() const {
    if (max_terms < 4) throw domain_error("SeriesConfig: max_terms must be >= 4");
    if (!(tail_tolerance > 0.0)) throw domain_error("SeriesConfig: tail_tolerance must be > 0");
}

std::array<cplx, 5> theta1_derivs(cplx z, cplx mu, const SeriesConfig& cfg) {
    cfg.validate();
    require_uhp(mu, "theta1");
    const double aq = std::exp(-pi * mu.imag());
    const double growth = std::abs(z.imag());
    std::array<cplx, 5> out{};
    for (int n = 0;; ++n) {
        if (n >= cfg.max_terms) throw precision_error("theta1: max_terms exhausted");
        const double m = 2.0 * n + 1.0;
        const double x = (n + 0.5) * (n + 0.5);
        // log of |q^{x}| m^4 cosh(m Im z), bounds every derivative term
        const double lb = x * std::log(aq) + 4.0 * std::log(m) + m * growth;
        double scale = 1.0;
        for (auto& v : out) scale = std::max(scale, std::abs(v));
        if (n > 0 && lb < std::log(cfg.tail_tolerance * scale)) break;
        const cplx c = 2.0 * std::exp(I * pi * mu * x) * ((n % 2) ? -1.0 : 1.0);
        const cplx s = std::sin(m * z), co = std::cos(m * z);
        out[0] += c * s;
        out[1] += c * m * co;
        out[2] -= c * m * m * s;
        out[3] -= c * m * m * m * co;
        out[4] += c * m * m * m * m * s;
    }
    return out;
}

cplx theta1(cplx z, cplx mu, int deriv_order, const SeriesConfig& cfg) {
    if (deriv_order < 0 || deriv_order > 3) throw domain_error("theta1: deriv_order must be 0..3");
    return theta1_derivs(z, mu, cfg)[deriv_order];
}

cplx log_dedekind_eta(cplx mu, const SeriesConfig& cfg) {
    cfg.validate();
    require_uhp(mu, "dedekind_eta");
    // eta(mu + 1) = e^{i pi/12} eta(mu), eta(-1/mu) = sqrt(-i mu) eta(mu)
    cplx acc = 0.0;
    for (int it = 0; it < 200; ++it) {
        const double n = std::round(mu.real());
        mu -= n;
        acc += I * pi * n / 12.0;
        if (std::abs(mu) >= 1.0 - 1e-12) return acc + log_eta_series(mu, cfg);
        const cplx tau = -1.0 / mu;
        // log eta(mu) = log eta(-1/tau) = log eta(tau) + 1/2 log(-i tau)
        acc += 0.5 * std::log(-I * tau);
        mu = tau;
    }
    throw precision_error("dedekind_eta: modular reduction did not terminate");
}

cplx dedekind_eta(cplx mu, const SeriesConfig& cfg) {
    return std::exp(log_dedekind_eta(mu, cfg));
}

cplx gamma_chazy(cplx mu, const SeriesConfig& cfg) {
    cfg.validate();
    require_uhp(mu, "gamma_chazy");
    // gamma(mu + 1) = gamma(mu); gamma(-1/tau) = tau^2 gamma(tau) + 2 tau
    mu -= std::round(mu.real());
    if (std::abs(mu) >= 1.0 - 1e-12) return gamma_series(mu, cfg);
    const cplx tau = -1.0 / mu;
    return tau * tau * gamma_chazy(tau, cfg) + 2.0 * tau;
}

ReducedLattice reduce_lattice(cplx omega, cplx omega_prime) {
    if (omega == 0.0 || omega_prime == 0.0) throw domain_error("degenerate lattice");
    const double orient = (omega_prime / omega).imag();
    if (!(std::abs(orient) > 1e-14) || !std::isfinite(orient))
        throw domain_error("degenerate lattice");
    if (orient < 0.0) throw domain_error("lattice basis must satisfy Im(omega'/omega) > 0");
    // (w1, w2) = M (omega, omega') tracked through integer matrix ops; we keep the inverse
    cplx w1 = omega, w2 = omega_prime;
    for (int it = 0; it < 500; ++it) {
        const double n = std::round((w2 / w1).real());
        w2 -= n * w1;
        if (std::abs(w2) < std::abs(w1) * (1.0 - 1e-14)) {
            const cplx t = w1;
            w1 = w2;
            w2 = -t;
            continue;
        }
        ReducedLattice r{w1, w2, w2 / w1, 0, 0, 0, 0};
        // express the input half-periods in the reduced basis
        auto coords = [&](cplx v, long& a, long& b) {
            const double det = (w1.real() * w2.imag() - w1.imag() * w2.real());
            const double x = (v.real() * w2.imag() - v.imag() * w2.real()) / det;
            const double y = (w1.real() * v.imag() - w1.imag() * v.real()) / det;
            a = std::lround(x);
            b = std::lround(y);
        };
        coords(omega, r.a1, r.b1);
        coords(omega_prime, r.a2, r.b2);
        return r;
    }
    throw precision_error("lattice reduction did not terminate");
}

std::array<cplx, 3> weierstrass_p_all(cplx z, cplx omega, cplx omega_prime,
                                      const SeriesConfig& cfg) {
    const ReducedLattice L = reduce_lattice(omega, omega_prime);
    // z = x 2w1 + y 2w2, reduce x, y to [-1/2, 1/2]
    const cplx p1 = 2.0 * L.w1, p2 = 2.0 * L.w2;
    const double det = p1.real() * p2.imag() - p1.imag() * p2.real();
    const double x = (z.real() * p2.imag() - z.imag() * p2.real()) / det;
    const double y = (p1.real() * z.imag() - p1.imag() * z.real()) / det;
    const cplx zr = z - std::round(x) * p1 - std::round(y) * p2;
    if (std::abs(zr) < 1e-13 * std::abs(L.w1)) throw pole_error("weierstrass_p: lattice point");

    const cplx k = pi / (2.0 * L.w1);
    const auto th = theta1_derivs(k * zr, L.tau, cfg);
    const cplx r1 = th[1] / th[0], r2 = th[2] / th[0], r3 = th[3] / th[0], r4 = th[4] / th[0];
    const cplx l2 = r2 - r1 * r1;
    const cplx l3 = r3 - 3.0 * r2 * r1 + 2.0 * r1 * r1 * r1;
    const cplx l4 = r4 - 4.0 * r3 * r1 - 3.0 * r2 * r2 + 12.0 * r2 * r1 * r1 - 6.0 * std::pow(r1, 4);
    const cplx eta_over_w = -(pi * I / (4.0 * L.w1 * L.w1)) * gamma_chazy(L.tau, cfg);
    const cplx k2 = k * k;
    return {-eta_over_w - k2 * l2, -k2 * k * l3, -k2 * k2 * l4};
}

cplx weierstrass_p(cplx z, cplx omega, cplx omega_prime, int deriv_order,
                   const SeriesConfig& cfg) {
    if (deriv_order < 0 || deriv_order > 2)
        throw domain_error("weierstrass_p: deriv_order must be 0..2");
    return weierstrass_p_all(z, omega, omega_prime, cfg)[deriv_order];
}

cplx weierstrass_zeta_eta1(cplx omega, cplx omega_prime, const SeriesConfig& cfg) {
    const ReducedLattice L = reduce_lattice(omega, omega_prime);
    const cplx ea = -(pi * I) * gamma_chazy(L.tau, cfg) / (4.0 * L.w1);
    const cplx eb = (ea * L.w2 - pi * I / 2.0) / L.w1;
    return double(L.a1) * ea + double(L.b1) * eb;
}

std::pair<cplx, cplx> lattice_invariants(cplx omega, cplx omega_prime, const SeriesConfig& cfg) {
    const cplx e1 = weierstrass_p(omega, omega, omega_prime, 0, cfg);
    const cplx e2 = weierstrass_p(omega + omega_prime, omega, omega_prime, 0, cfg);
    const cplx e3 = weierstrass_p(omega_prime, omega, omega_prime, 0, cfg);
    return {2.0 * (e1 * e1 + e2 * e2 + e3 * e3), 4.0 * e1 * e2 * e3};
}

cplx carlson_rf(cplx x, cplx y, cplx z) {
    int zeros = (x == 0.0) + (y == 0.0) + (z == 0.0);
    if (zeros > 1) throw domain_error("carlson_rf: more than one zero argument");
    const double r = 1e-14;
    cplx a0 = (x + y + z) / 3.0;
    const double q = std::pow(3.0 * r, -1.0 / 6.0) *
                     std::max({std::abs(a0 - x), std::abs(a0 - y), std::abs(a0 - z)});
    cplx a = a0, xm = x, ym = y, zm = z;
    double fm = 1.0;
    for (int m = 0; m < 100; ++m) {
        if (fm * q < std::abs(a)) {
            const cplx X = (a0 - x) / (a / fm), Y = (a0 - y) / (a / fm);
            const cplx Z = -X - Y;
            const cplx e2 = X * Y - Z * Z, e3 = X * Y * Z;
            return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) /
                   std::sqrt(a);
        }
        const cplx sx = std::sqrt(xm), sy = std::sqrt(ym), sz = std::sqrt(zm);
        const cplx lam = sx * sy + sx * sz + sy * sz;
        a = (a + lam) / 4.0;
        xm = (xm + lam) / 4.0;
        ym = (ym + lam) / 4.0;
        zm = (zm + lam) / 4.0;
        fm /= 4.0;
    }
    throw precision_error("carlson_rf: duplication did not converge");
}

}  // namespace g1f
