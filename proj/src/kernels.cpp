#include "g1f/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace g1f {

namespace {

TorusCovering conj_covering(const TorusCovering& c) {
    TorusCovering a = c;
    for (int k = 0; k < 3; ++k) {
        a.lambda[k] = std::conj(c.lambda[k]);
        a.e[k] = std::conj(c.e[k]);
        a.ram_points[k] = std::conj(c.ram_points[k]);
    }
    a.omega = std::conj(c.omega);
    a.omega_prime = std::conj(c.omega_prime);
    a.c = std::conj(c.c);
    a.mu = std::conj(c.mu);
    a.eta1 = std::conj(c.eta1);
    a.eta2 = std::conj(c.eta2);
    return a;
}

LocalFrame conj_frame(const LocalFrame& f) {
    LocalFrame g;
    for (int k = 0; k < 3; ++k) g.dzeta_dx[k] = std::conj(f.dzeta_dx[k]);
    return g;
}

// S_i in the x_i frame: f^2 S_s + {s, x}/6 with {s, x} = -3 b / a^2,
// wp(s_i + u) = e_i + a u^2 + b u^4 + ...
cplx s_transport(const TorusCovering& cov, const LocalFrame& fr, int i) {
    const auto& e = cov.e;
    const cplx g2 = 2.0 * (e[0] * e[0] + e[1] * e[1] + e[2] * e[2]);
    const cplx g3 = 4.0 * e[0] * e[1] * e[2];
    cplx a = 1.0;
    for (int j = 0; j < 3; ++j)
        if (j != i) a *= e[i] - e[j];
    const cplx ei = e[i];
    const cplx b = (120.0 * ei * ei * ei - 18.0 * g2 * ei - 12.0 * g3) / 24.0;
    const cplx f = fr.dzeta_dx[i];
    return f * f * cov.eta1 / cov.omega - 0.5 * b / (a * a);
}

double max_abs(double acc, cplx v) { return std::max(acc, std::abs(v)); }

std::vector<cplx> flatten(const RotationData& r) {
    std::vector<cplx> v;
    v.reserve(36);
    for (const auto& row : r.beta) v.insert(v.end(), row.begin(), row.end());
    return v;
}

cplx solve_lambda(const TorusCovering& cov, cplx target, cplx guess, const SeriesConfig& cfg) {
    cplx z = guess;
    for (int it = 0; it < 60; ++it) {
        const auto p = weierstrass_p_all(z, cov.omega, cov.omega_prime, cfg);
        const cplx dz = (p[0] + cov.c - target) / p[1];
        z -= dz;
        if (std::abs(dz) < 1e-15 * std::abs(cov.omega)) return z;
    }
    throw precision_error("kernels: Newton inversion of lambda did not converge");
}

}  // namespace

RealDouble make_double(const std::array<cplx, 6>& coords, const RealDouble* reference,
                       const CoverOptions& opt) {
    RealDouble d;
    d.coords = coords;
    d.hol = covering_from_branch_points(BranchTriple{{coords[0], coords[1], coords[2]}},
                                        reference ? &reference->hol : nullptr, opt);
    const BranchTriple rb{{std::conj(coords[3]), std::conj(coords[4]), std::conj(coords[5])}};
    d.raw = covering_from_branch_points(rb, reference ? &reference->raw : &d.hol, opt);
    d.anti = conj_covering(d.raw);
    d.frame_hol = local_frame(d.hol, reference ? &reference->frame_hol : nullptr);
    if (reference) {
        const LocalFrame rf = conj_frame(reference->frame_anti);
        d.frame_anti = conj_frame(local_frame(d.raw, &rf));
    } else {
        d.frame_anti = conj_frame(local_frame(d.raw, &d.frame_hol));
    }
    d.im_b = (d.hol.mu - d.anti.mu) / (2.0 * I);
    return d;
}

RealDouble make_double(const BranchTriple& b, const CoverOptions& opt) {
    std::array<cplx, 6> c{};
    for (int k = 0; k < 3; ++k) {
        c[k] = b.lambda[k];
        c[3 + k] = std::conj(b.lambda[k]);
    }
    return make_double(c, nullptr, opt);
}

cplx w_kernel(const TorusCovering& cov, cplx zeta_p, cplx zeta_q, const SeriesConfig& cfg) {
    return weierstrass_p(zeta_p - zeta_q, cov.omega, cov.omega_prime, 0, cfg) +
           cov.eta1 / cov.omega;
}

cplx schiffer_kernel(const TorusCovering& cov, cplx zeta_p, cplx zeta_q, const SeriesConfig& cfg) {
    const cplx h = 1.0 / (2.0 * cov.omega);
    return w_kernel(cov, zeta_p, zeta_q, cfg) - pi / cov.mu.imag() * h * h;
}

cplx bergman_kernel(const TorusCovering& cov, cplx, cplx) {
    const cplx h = 1.0 / (2.0 * cov.omega);
    return pi / cov.mu.imag() * h * std::conj(h);
}

cplx schiffer_hol(const RealDouble& d, cplx zeta_p, cplx zeta_q, const SeriesConfig& cfg) {
    const cplx h = 1.0 / (2.0 * d.hol.omega);
    return w_kernel(d.hol, zeta_p, zeta_q, cfg) - pi / d.im_b * h * h;
}

cplx schiffer_anti(const RealDouble& d, cplx zbar_p, cplx zbar_q, const SeriesConfig& cfg) {
    const cplx h = 1.0 / (2.0 * d.anti.omega);
    const cplx wp = std::conj(
        weierstrass_p(std::conj(zbar_p - zbar_q), d.raw.omega, d.raw.omega_prime, 0, cfg));
    return wp + d.anti.eta1 / d.anti.omega - pi / d.im_b * h * h;
}

cplx bergman_value(const RealDouble& d) {
    return pi / (d.im_b * 4.0 * d.hol.omega * d.anti.omega);
}

RotationData rotation_data(const RealDouble& d, const SeriesConfig& cfg) {
    RotationData r;
    const auto& f = d.frame_hol.dzeta_dx;
    const auto& fb = d.frame_anti.dzeta_dx;
    const cplx B = bergman_value(d);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            if (i != j) {
                r.beta[i][j] =
                    0.5 * schiffer_hol(d, d.hol.ram_points[i], d.hol.ram_points[j], cfg) * f[i] * f[j];
                r.beta[3 + i][3 + j] =
                    0.5 * schiffer_anti(d, d.anti.ram_points[i], d.anti.ram_points[j], cfg) * fb[i] *
                    fb[j];
            }
            r.beta[i][3 + j] = 0.5 * B * f[i] * fb[j];
            r.beta[3 + j][i] = r.beta[i][3 + j];
        }
    }
    for (int i = 0; i < 3; ++i) {
        r.s_diag[i] = s_transport(d.hol, d.frame_hol, i);
        r.s_diag[3 + i] = s_transport(d.anti, d.frame_anti, i);
        const cplx w1 = f[i] / (2.0 * d.hol.omega), w1b = fb[i] / (2.0 * d.anti.omega);
        r.sigma_diag[i] = -pi / d.im_b * w1 * w1;
        r.sigma_diag[3 + i] = -pi / d.im_b * w1b * w1b;
    }
    for (int k = 0; k < 6; ++k) r.omega_diag[k] = r.s_diag[k] + r.sigma_diag[k];
    return r;
}

RotationData rotation_data(const TorusCovering& cov, const SeriesConfig& cfg) {
    return rotation_data(make_double(BranchTriple{cov.lambda}), cfg);
}

Hamiltonians hamiltonians(const RealDouble& d, const RotationData& rot) {
    Hamiltonians H;
    const auto& x = d.coords;
    const auto& b = rot.beta;
    for (int i = 0; i < 3; ++i) {
        cplx h = 0.0, hb = 0.0;
        for (int j = 0; j < 3; ++j) {
            if (j != i) {
                h += b[i][j] * b[i][j] * (x[i] - x[j]);
                hb += b[3 + i][3 + j] * b[3 + i][3 + j] * (x[3 + i] - x[3 + j]);
            }
            h += b[i][3 + j] * b[i][3 + j] * (x[i] - x[3 + j]);
            hb += b[3 + i][j] * b[3 + i][j] * (x[3 + i] - x[j]);
        }
        H.h[i] = 0.5 * h;
        H.h_bar[i] = 0.5 * hb;
    }
    return H;
}

Hamiltonians hamiltonians(const TorusCovering& cov) {
    const RealDouble d = make_double(BranchTriple{cov.lambda});
    return hamiltonians(d, rotation_data(d));
}

CheckOutcome check_flatness(const BranchTriple& b, const FdOptions& fd) {
    CheckOutcome out;
    const RealDouble base = make_double(b);
    const RotationData rot = rotation_data(base);
    const auto& beta = rot.beta;
    auto beta_of = [](const RealDouble& d) { return flatten(rotation_data(d)); };

    auto flat1 = [&](double h, double& sum_res) {
        std::array<std::vector<cplx>, 6> D;
        for (int k = 0; k < 6; ++k) D[k] = fd_partial(base, k, h, beta_of);
        double r1 = 0.0, r2 = 0.0;
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) {
                if (i == j) continue;
                cplx s = 0.0;
                for (int k = 0; k < 6; ++k) {
                    s += D[k][6 * i + j];
                    if (k == i || k == j) continue;
                    r1 = max_abs(r1, D[k][6 * i + j] - beta[i][k] * beta[k][j]);
                }
                r2 = max_abs(r2, s);
            }
        sum_res = r2;
        return r1;
    };
    const double h = fd.step * branch_scale(b);
    double r2 = 0.0, r2h = 0.0;
    const double r1 = flat1(h, r2);
    out.residuals["flat1"] = r1;
    out.residuals["flat2"] = r2;
    if (fd.halving_check) {
        const double r1h = flat1(h / 2.0, r2h);
        out.residuals["flat1_half_step"] = r1h;
        if (r1 > 1e-12 && r1h > 1.5 * r1)
            out.warnings.push_back("flatness: residual grew under step halving (roundoff dominated)");
    }

    // E = sum_k x_k d/dx_k via a scaling difference
    const double eps = fd.step;
    auto scaled = [&](double s) {
        auto c = base.coords;
        for (auto& v : c) v *= (1.0 + s);
        return flatten(rotation_data(make_double(c, &base)));
    };
    const auto bp = scaled(eps), bm = scaled(-eps);
    double re = 0.0;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            if (i == j) continue;
            const cplx e = (bp[6 * i + j] - bm[6 * i + j]) / (2.0 * eps);
            re = max_abs(re, e + beta[i][j]);
        }
    out.residuals["euler_beta"] = re;
    return out;
}

CheckOutcome check_rauch(const BranchTriple& b, const FdOptions& fd) {
    CheckOutcome out;
    const SeriesConfig cfg{};
    const RealDouble base = make_double(b);
    const double h = fd.step * branch_scale(b);
    const auto& f = base.frame_hol.dzeta_dx;

    auto mu_of = [](const RealDouble& d) { return std::array<cplx, 1>{d.hol.mu}; };
    double rh = 0.0, ra = 0.0;
    for (int j = 0; j < 3; ++j) {
        const cplx w1 = f[j] / (2.0 * base.hol.omega);
        rh = max_abs(rh, fd_partial(base, j, h, mu_of)[0] - pi * I * w1 * w1);
        ra = max_abs(ra, fd_partial(base, 3 + j, h, mu_of)[0]);
    }
    out.residuals["rauch_holo"] = rh;
    out.residuals["rauch_antiholo"] = ra;

    // P, Q fixed by their lambda values and sheets
    const cplx zp0 = 0.37 * base.hol.omega + 0.21 * base.hol.omega_prime;
    const cplx zq0 = 0.83 * base.hol.omega + 0.62 * base.hol.omega_prime;
    const cplx lp = lambda_map(base.hol, zp0, cfg), lq = lambda_map(base.hol, zq0, cfg);
    struct Pts {
        cplx sp, sq, rp, rq;
    };
    auto points = [&](const RealDouble& d) {
        return Pts{solve_lambda(d.hol, lp, zp0, cfg), solve_lambda(d.hol, lq, zq0, cfg),
                   solve_lambda(d.raw, lp, zp0, cfg), solve_lambda(d.raw, lq, zq0, cfg)};
    };
    auto kernels_at = [&](const RealDouble& d) {
        const Pts p = points(d);
        const cplx dp = weierstrass_p(p.sp, d.hol.omega, d.hol.omega_prime, 1, cfg);
        const cplx dq = weierstrass_p(p.sq, d.hol.omega, d.hol.omega_prime, 1, cfg);
        const cplx dqb = std::conj(weierstrass_p(p.rq, d.raw.omega, d.raw.omega_prime, 1, cfg));
        return std::array<cplx, 2>{schiffer_hol(d, p.sp, p.sq, cfg) / (dp * dq),
                                   bergman_value(d) / (dp * dqb)};
    };

    const Pts p = points(base);
    const cplx dp = weierstrass_p(p.sp, base.hol.omega, base.hol.omega_prime, 1, cfg);
    const cplx dq = weierstrass_p(p.sq, base.hol.omega, base.hol.omega_prime, 1, cfg);
    const cplx dqb = std::conj(weierstrass_p(p.rq, base.raw.omega, base.raw.omega_prime, 1, cfg));
    const cplx zbq = std::conj(p.rq);
    const cplx B = bergman_value(base);
    const auto& fb = base.frame_anti.dzeta_dx;
    double l[4] = {0, 0, 0, 0};
    for (int j = 0; j < 3; ++j) {
        const cplx sj = base.hol.ram_points[j];
        const cplx om_pj = schiffer_hol(base, p.sp, sj, cfg) * f[j] / dp;
        const cplx om_qj = schiffer_hol(base, p.sq, sj, cfg) * f[j] / dq;
        const cplx b_pjb = B * fb[j] / dp;
        const cplx b_qjb = B * fb[j] / dq;
        const cplx b_pj_qb = B * f[j] / dqb;
        const cplx om_qj_conj = schiffer_anti(base, zbq, base.anti.ram_points[j], cfg) * fb[j] / dqb;
        const auto dh = fd_partial(base, j, h, kernels_at);
        const auto da = fd_partial(base, 3 + j, h, kernels_at);
        l[0] = max_abs(l[0], dh[0] - 0.5 * om_pj * om_qj);
        l[1] = max_abs(l[1], da[0] - 0.5 * b_pjb * b_qjb);
        l[2] = max_abs(l[2], dh[1] - 0.5 * om_pj * b_pj_qb);
        l[3] = max_abs(l[3], da[1] - 0.5 * b_pjb * om_qj_conj);
    }
    out.residuals["sb_omega_lambda"] = l[0];
    out.residuals["sb_omega_lambdabar"] = l[1];
    out.residuals["sb_bergman_lambda"] = l[2];
    out.residuals["sb_bergman_lambdabar"] = l[3];
    return out;
}

CheckOutcome check_tau_relations(const BranchTriple& b, const FdOptions& fd) {
    CheckOutcome out;
    const RealDouble base = make_double(b);
    const RotationData rot = rotation_data(base);
    const Hamiltonians H = hamiltonians(base, rot);
    double rq = 0.0;
    for (int i = 0; i < 3; ++i) {
        rq = max_abs(rq, H.h[i] - 0.25 * rot.omega_diag[i]);
        rq = max_abs(rq, H.h_bar[i] - 0.25 * rot.omega_diag[3 + i]);
    }
    out.residuals["h_quarter_omega"] = rq;

    const double h = fd.step * branch_scale(b);
    auto diag_of = [](const RealDouble& d) { return rotation_data(d).omega_diag; };
    auto imb_of = [](const RealDouble& d) { return std::array<cplx, 1>{d.im_b}; };
    std::array<std::array<cplx, 6>, 6> D{};
    std::array<cplx, 6> dimb{};
    for (int k = 0; k < 6; ++k) {
        D[k] = fd_partial(base, k, h, diag_of);
        dimb[k] = fd_partial(base, k, h, imb_of)[0];
    }
    double sym = 0.0, var = 0.0, lg = 0.0, cj = 0.0;
    for (int i = 0; i < 6; ++i) {
        for (int k = 0; k < 6; ++k) {
            if (i == k) continue;
            sym = max_abs(sym, D[k][i] - D[i][k]);
            var = max_abs(var, D[k][i] - 2.0 * rot.beta[i][k] * rot.beta[i][k]);
        }
        lg = max_abs(lg, dimb[i] / base.im_b + 0.5 * rot.sigma_diag[i]);
    }
    for (int j = 0; j < 3; ++j) cj = max_abs(cj, dimb[3 + j] - std::conj(dimb[j]));
    out.residuals["tau_omega_integrability"] = sym;
    out.residuals["omega_diag_variation"] = var;
    out.residuals["log_im_b_variation"] = lg;
    out.residuals["im_b_conjugation"] = cj;
    return out;
}

}  // namespace g1f
