#include "g1f/torus_cover.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace g1f {

namespace {

// distance from the two cuts (-inf, 0] and [1, inf) of R_F(0, 1 - m, 1), R_F(0, m, 1)
double cut_distance(cplx m) {
    auto dist_ray = [](cplx z, double start, bool leftwards) {
        const bool on_side = leftwards ? z.real() <= start : z.real() >= start;
        return on_side ? std::abs(z.imag()) : std::abs(z - start);
    };
    return std::min(dist_ray(m, 0.0, true), dist_ray(m, 1.0, false));
}

// real coordinates of v in the basis (u1, u2)
std::pair<double, double> real_coords(cplx v, cplx u1, cplx u2) {
    const double det = u1.real() * u2.imag() - u1.imag() * u2.real();
    return {(v.real() * u2.imag() - v.imag() * u2.real()) / det,
            (u1.real() * v.imag() - u1.imag() * v.real()) / det};
}

void canonical_gamma2(cplx& w, cplx& wp) {
    for (int it = 0; it < 1000; ++it) {
        cplx mu = wp / w;
        const double n = std::round(mu.real() / 2.0);
        if (n != 0.0) {
            wp -= 2.0 * n * w;
            mu = wp / w;
        }
        if (std::abs(mu + 0.5) < 0.5 - 1e-14) {
            w += 2.0 * wp;
        } else if (std::abs(mu - 0.5) < 0.5 - 1e-14) {
            w -= 2.0 * wp;
        } else {
            if (w.real() < 0.0 || (w.real() == 0.0 && w.imag() < 0.0)) {
                w = -w;
                wp = -wp;
            }
            return;
        }
    }
    throw precision_error("covering: Gamma(2) reduction did not terminate");
}

}  // namespace

double branch_scale(const BranchTriple& b) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) s = std::max(s, std::abs(b.lambda[i] - b.lambda[j]));
    return s;
}

TorusCovering covering_from_branch_points(const BranchTriple& b, const TorusCovering* reference,
                                          const CoverOptions& opt) {
    const double scale = branch_scale(b);
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (!(std::abs(b.lambda[i] - b.lambda[j]) > opt.degeneracy_tolerance * scale))
                throw degeneracy_error("covering: coincident branch points");

    TorusCovering cov;
    cov.lambda = b.lambda;
    cov.c = (b.lambda[0] + b.lambda[1] + b.lambda[2]) / 3.0;
    for (int k = 0; k < 3; ++k) cov.e[k] = b.lambda[k] - cov.c;

    static constexpr int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                        {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    int best = 0;
    double best_d = -1.0;
    for (int p = 0; p < 6; ++p) {
        const auto& q = perms[p];
        const cplx m = (cov.e[q[1]] - cov.e[q[2]]) / (cov.e[q[0]] - cov.e[q[2]]);
        const double d = cut_distance(m);
        if (d > best_d) {
            best_d = d;
            best = p;
        }
    }
    const auto& q = perms[best];
    const cplx m = (cov.e[q[1]] - cov.e[q[2]]) / (cov.e[q[0]] - cov.e[q[2]]);
    const cplx s = std::sqrt(cov.e[q[0]] - cov.e[q[2]]);
    cplx w = carlson_rf(0.0, 1.0 - m, 1.0) / s;
    cplx wp = I * carlson_rf(0.0, m, 1.0) / s;
    if ((wp / w).imag() < 0.0) wp = -wp;

    // which e_k sits at each half-period class
    const std::array<cplx, 3> hp{w, w + wp, wp};
    std::array<int, 3> label{};
    for (int h = 0; h < 3; ++h) {
        const cplx val = weierstrass_p(hp[h], w, wp, 0, opt.series);
        int arg = 0;
        for (int k = 1; k < 3; ++k)
            if (std::abs(val - cov.e[k]) < std::abs(val - cov.e[arg])) arg = k;
        label[h] = arg;
    }
    if (label[0] == label[1] || label[0] == label[2] || label[1] == label[2])
        throw precision_error("covering: half-period classes not resolved");
    cplx omega = 0.0, omega_p = 0.0;
    for (int h = 0; h < 3; ++h) {
        if (label[h] == 0) omega = hp[h];
        if (label[h] == 2) omega_p = hp[h];
    }
    if ((omega_p / omega).imag() < 0.0) omega_p = -omega_p;

    if (reference == nullptr) {
        canonical_gamma2(omega, omega_p);
    } else {
        // nearest lattice half-periods to the reference ones, same classes
        auto [x1, y1] = real_coords(reference->omega, omega, omega_p);
        auto [x2, y2] = real_coords(reference->omega_prime, omega, omega_p);
        const long a1 = std::lround(x1), b1 = std::lround(y1);
        const long a2 = std::lround(x2), b2 = std::lround(y2);
        if ((a1 % 2 == 0) || (b1 % 2 != 0) || (a2 % 2 != 0) || (b2 % 2 == 0))
            throw precision_error("covering: continuation from reference changed labels");
        const cplx no = double(a1) * omega + double(b1) * omega_p;
        const cplx np = double(a2) * omega + double(b2) * omega_p;
        omega = no;
        omega_p = np;
        if (!((omega_p / omega).imag() > 0.0))
            throw precision_error("covering: continuation lost orientation");
    }
    cov.omega = omega;
    cov.omega_prime = omega_p;
    cov.mu = omega_p / omega;
    cov.ram_points = {omega, omega + omega_p, omega_p};

    for (int k = 0; k < 3; ++k) {
        const cplx lam = weierstrass_p(cov.ram_points[k], omega, omega_p, 0, opt.series) + cov.c;
        if (std::abs(lam - b.lambda[k]) > opt.roundtrip_tolerance * std::max(1.0, scale))
            throw precision_error("covering: roundtrip check failed");
    }
    cov.eta1 = weierstrass_zeta_eta1(omega, omega_p, opt.series);
    cov.eta2 = (cov.eta1 * omega_p - pi * I / 2.0) / omega;
    return cov;
}

cplx lambda_map(const TorusCovering& cov, cplx zeta, const SeriesConfig& cfg) {
    return weierstrass_p(zeta, cov.omega, cov.omega_prime, 0, cfg) + cov.c;
}

LocalFrame local_frame(const TorusCovering& cov, const LocalFrame* reference) {
    LocalFrame f;
    for (int i = 0; i < 3; ++i) {
        cplx wpp = 2.0;
        for (int j = 0; j < 3; ++j)
            if (j != i) wpp *= cov.e[i] - cov.e[j];
        if (std::abs(wpp) < std::numeric_limits<double>::min())
            throw degeneracy_error("local_frame: vanishing wp''");
        cplx r = 2.0 / wpp;
        // -0.0 on the negative axis would select -i: the principal root takes the upper lip
        if (r.imag() == 0.0) r.imag(0.0);
        cplx v = std::sqrt(r);
        if (reference && std::abs(v + reference->dzeta_dx[i]) < std::abs(v - reference->dzeta_dx[i]))
            v = -v;
        f.dzeta_dx[i] = v;
    }
    return f;
}

}  // namespace g1f
