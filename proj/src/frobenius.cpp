#include "g1f/frobenius.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace g1f {

void StructureKind::validate() const {
    if (kind == Kind::DoubleCombo && !(std::abs(sigma) >= 1e-6))
        throw domain_error("double-combo: |sigma| must be at least 1e-6");
}

std::string kind_name(Kind k) {
    switch (k) {
        case Kind::HoloS: return "holo-s";
        case Kind::DoubleS: return "double-s";
        case Kind::DoubleT: return "double-t";
        case Kind::DoubleCombo: return "double-combo";
    }
    return "?";
}

Kind parse_kind(const std::string& s) {
    if (s == "holo-s") return Kind::HoloS;
    if (s == "double-s") return Kind::DoubleS;
    if (s == "double-t") return Kind::DoubleT;
    if (s == "double-combo") return Kind::DoubleCombo;
    throw domain_error("unknown kind '" + s + "'");
}

FlatCoords flat_coordinates(const RealDouble& d, const StructureKind& k) {
    k.validate();
    const TorusCovering& h = d.hol;
    const TorusCovering& a = d.anti;
    const cplx mu = h.mu, mub = a.mu;
    if (k.kind == Kind::HoloS) {
        const cplx w = h.omega;
        return {{-(pi * I / (4.0 * w * w)) * gamma_chazy(mu) - h.c, 1.0 / w, mu / two_pi_i}};
    }
    // a- and b-periods of (wp + c) d s: int over [x, x + 2w] of wp is -2 zeta(w)
    const cplx ia = -2.0 * h.eta1 + 2.0 * h.omega * h.c;
    const cplx ib = -2.0 * h.eta2 + 2.0 * h.omega_prime * h.c;
    const cplx iab = -2.0 * a.eta1 + 2.0 * a.omega * a.c;
    const cplx ibb = -2.0 * a.eta2 + 2.0 * a.omega_prime * a.c;
    const cplx w = h.omega, wb = a.omega;
    std::vector<cplx> t(6);
    switch (k.kind) {
        case Kind::DoubleS: {
            // t1 = -2 Re{A (c - eta1/omega)}, A = mu-bar / (mu-bar - mu); t4 likewise with eta2, omega'
            const cplx A = mub / (mu - mub), Ab = mu / (mub - mu);
            t[0] = (A * ia / w + Ab * iab / wb) / 2.0;
            t[3] = (A * ib / w + Ab * ibb / wb) / 2.0;
            t[1] = mub / (mub - mu) / w;
            t[4] = mu / (mu - mub) / wb;
            t[2] = mu * mub / (mub - mu) / two_pi_i;
            t[5] = mub / (mub - mu) / two_pi_i;
            break;
        }
        case Kind::DoubleT: {
            const cplx A = 1.0 / (mub - mu), Ab = 1.0 / (mu - mub);
            t[0] = (A * ib / w + Ab * ibb / wb) / 2.0;
            t[3] = (A * ia / w + Ab * iab / wb) / 2.0;
            t[1] = 1.0 / ((mu - mub) * w);
            t[4] = 1.0 / ((mub - mu) * wb);
            t[2] = mu / ((mu - mub) * two_pi_i);
            t[5] = 1.0 / ((mu - mub) * two_pi_i);
            break;
        }
        case Kind::DoubleCombo: {
            const cplx sg = k.sigma;
            const cplx A = (mub - sg) / (mub - mu), B = (sg - mu) / (mub - mu);
            // s = -(a-period of lambda Phi), t = -(b-period), Phi = A d s/(2w) + B d s-bar/(2 w-bar)
            const cplx s = -(A * ia / (2.0 * w) + B * iab / (2.0 * wb));
            const cplx tt = -(A * ib / (2.0 * w) + B * ibb / (2.0 * wb));
            t[0] = s + tt / sg;
            t[3] = s - tt / sg;
            t[1] = A / w;
            t[4] = B / wb;
            t[2] = A * mu / two_pi_i;
            t[5] = A / two_pi_i;
            break;
        }
        case Kind::HoloS: break;
    }
    return {t};
}

FlatCoords flat_coordinates(const TorusCovering& cov, const StructureKind& k) {
    return flat_coordinates(make_double(BranchTriple{cov.lambda}), k);
}

ConstantMetric constant_metric(const StructureKind& k) {
    k.validate();
    const int n = k.dim();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    // quadratic form sum eta_AB dt_A dt_B; an off-diagonal term x dt_A dt_B puts x/2 in both slots
    auto put = [&](int a, int b, cplx v) {
        if (a == b) {
            m(a - 1, a - 1) += v;
        } else {
            m(a - 1, b - 1) += v / 2.0;
            m(b - 1, a - 1) += v / 2.0;
        }
    };
    switch (k.kind) {
        case Kind::HoloS:
            put(2, 2, 0.5);
            put(1, 3, -2.0);
            break;
        case Kind::DoubleS:
            put(2, 2, 0.5);
            put(5, 5, 0.5);
            put(1, 3, -2.0);
            put(4, 6, 2.0);
            break;
        case Kind::DoubleT:
            put(2, 2, 0.5);
            put(5, 5, 0.5);
            put(1, 6, 2.0);
            put(3, 4, -2.0);
            break;
        case Kind::DoubleCombo:
            put(2, 2, 0.5);
            put(5, 5, 0.5);
            put(1, 3, -1.0);
            put(1, 6, k.sigma);
            put(3, 4, -1.0);
            put(4, 6, -k.sigma);
            break;
    }
    return {m};
}

EulerData euler_data(const StructureKind& k) {
    EulerData e;
    e.nu = {1.0, 0.5, 0.0};
    if (k.kind != Kind::HoloS) e.nu = {1.0, 0.5, 0.0, 1.0, 0.5, 0.0};
    e.charge = 1.0;
    e.nu_F = 3.0 - e.charge;
    return e;
}

std::pair<cplx, cplx> recover_moduli(const StructureKind& k, const FlatCoords& fc) {
    const auto& t = fc.t;
    if (k.kind == Kind::HoloS) return {two_pi_i * t[2], std::conj(two_pi_i * t[2])};
    const cplx mu = t[2] / t[5];
    switch (k.kind) {
        case Kind::DoubleS: return {mu, two_pi_i * t[2] / (two_pi_i * t[5] - 1.0)};
        case Kind::DoubleT: return {mu, (two_pi_i * t[2] - 1.0) / (two_pi_i * t[5])};
        default: return {mu, (k.sigma - two_pi_i * t[2]) / (1.0 - two_pi_i * t[5])};
    }
}

double realness_residual(const StructureKind& k, const FlatCoords& fc) {
    const auto& t = fc.t;
    const cplx c0 = 1.0 / two_pi_i;
    switch (k.kind) {
        case Kind::HoloS: return 0.0;
        case Kind::DoubleS:
            return std::max({std::abs(t[0].imag()), std::abs(t[2].imag()), std::abs(t[3].imag()),
                             std::abs(t[4] - std::conj(t[1])),
                             std::abs(std::conj(t[5]) - (t[5] - c0))});
        case Kind::DoubleT:
            return std::max({std::abs(t[0].imag()), std::abs(t[3].imag()), std::abs(t[5].imag()),
                             std::abs(t[4] - std::conj(t[1])),
                             std::abs(std::conj(t[2]) - (t[2] - c0))});
        case Kind::DoubleCombo:
            return std::max({std::abs(t[0].imag()), std::abs(t[3].imag()),
                             std::abs(t[4] - std::conj(t[1]))});
    }
    return 0.0;
}

namespace {

std::vector<cplx> coords_at(const RealDouble& base, const StructureKind& k,
                            const std::array<cplx, 6>& c) {
    return flat_coordinates(make_double(c, &base), k).t;
}

}  // namespace

CheckOutcome check_unit_field(const BranchTriple& b, const StructureKind& k, double delta) {
    CheckOutcome out;
    const RealDouble base = make_double(b);
    auto shifted = [&](double s) {
        auto c = base.coords;
        for (auto& v : c) v += s;
        return coords_at(base, k, c);
    };
    const auto tp = shifted(delta), tm = shifted(-delta);
    double r = 0.0;
    for (std::size_t a = 0; a < tp.size(); ++a) {
        const cplx rate = (tp[a] - tm[a]) / (2.0 * delta);
        r = std::max(r, std::abs(rate + (a == 0 ? 1.0 : 0.0)));
        if (a == 0) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "Delta t1/delta = %.12g%+.3gi", rate.real(), rate.imag());
            out.notes.push_back(buf);
        }
    }
    out.residuals["unit_field"] = r;
    return out;
}

CheckOutcome check_euler_scaling(const BranchTriple& b, const StructureKind& k, double eps) {
    CheckOutcome out;
    const RealDouble base = make_double(b);
    const auto t0 = flat_coordinates(base, k).t;
    const auto nu = euler_data(k).nu;
    auto scaled = [&](double s) {
        auto c = base.coords;
        for (auto& v : c) v *= (1.0 + s);
        return coords_at(base, k, c);
    };
    const auto tp = scaled(eps), tm = scaled(-eps);
    double r = 0.0;
    for (std::size_t a = 0; a < t0.size(); ++a) {
        const cplx rate = (tp[a] - tm[a]) / (2.0 * eps);
        r = std::max(r, std::abs(rate - nu[a] * t0[a]) / std::max(1.0, std::abs(t0[a])));
    }
    out.residuals["euler_scaling"] = r;
    return out;
}

}  // namespace g1f
