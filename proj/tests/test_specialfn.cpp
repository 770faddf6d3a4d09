#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "support.hpp"

#include "g1f/prepotential.hpp"
#include "g1f/specialfn.hpp"

using namespace g1f;
using testing::fixture;

namespace {

// d^k gamma / d mu^k by the Cauchy engine on a single variable
cplx dgamma(cplx mu, int k) {
    const Fn f = [](const Point& x) { return gamma_chazy(x[0]); };
    DerivativeEngine e;
    e.radius = 0.2;
    e.nodes = 64;
    return derivative(f, {mu}, {k}, e);
}

double chazy_residual(cplx mu) {
    const cplx g = gamma_chazy(mu), g1 = dgamma(mu, 1), g2 = dgamma(mu, 2), g3 = dgamma(mu, 3);
    return std::abs(g3 - 6.0 * g * g2 + 9.0 * g1 * g1);
}

}  // namespace

TEST_CASE("theta1 at the origin") {
    CHECK(std::abs(theta1(0.0, I, 0)) < 1e-15);
    CHECK(std::abs(theta1(0.0, I, 2)) < 1e-15);
    CHECK(std::abs(theta1(0.0, I, 1) - fixture("T1P_I")) < 1e-14);
}

TEST_CASE("theta1 errors") {
    CHECK_THROWS_AS(theta1(0.1, cplx{0.3, -0.1}, 0), domain_error);
    CHECK_THROWS_AS(theta1(0.1, cplx{0.3, 0.0}, 1), domain_error);
    CHECK_THROWS_AS(theta1(0.1, I, 4), domain_error);
    SeriesConfig tiny{4, 1e-16};
    CHECK_THROWS_AS(theta1(0.3, cplx{0.0, 0.01}, 1, tiny), precision_error);
    CHECK_THROWS_AS(theta1(0.3, I, 1, SeriesConfig{3, 1e-16}), domain_error);
    CHECK_THROWS_AS(theta1(0.3, I, 1, SeriesConfig{64, 0.0}), domain_error);
}

TEST_CASE("theta1 derivative orders agree with the four-term pass") {
    const cplx z{0.31, -0.12}, mu{0.2, 0.8};
    const auto all = theta1_derivs(z, mu);
    for (int k = 0; k < 4; ++k) CHECK(std::abs(all[k] - theta1(z, mu, k)) < 1e-13 * std::max(1.0, std::abs(all[k])));
}

TEST_CASE("Dedekind eta") {
    CHECK(std::abs(std::abs(dedekind_eta(I + 1.0)) - std::abs(dedekind_eta(I))) < 1e-14);
    CHECK(std::abs(dedekind_eta(I) - fixture("ETA_I")) < 1e-14);
    const cplx mu{0.3, 1.1};
    CHECK(std::abs(std::conj(dedekind_eta(mu)) - dedekind_eta(-std::conj(mu))) < 1e-14);
    // eta is the exponential of the continuous log branch
    CHECK(std::abs(std::exp(log_dedekind_eta(mu)) - dedekind_eta(mu)) < 1e-14);
    CHECK_THROWS_AS(dedekind_eta(cplx{0.2, -1.0}), domain_error);
}

TEST_CASE("gamma: value at i, conjugation and the log-eta derivative") {
    CHECK(std::abs(gamma_chazy(I) - I) < 1e-10);
    CHECK(std::abs(gamma_chazy(I) - fixture("GAMMA_I")) < 1e-14);
    CHECK(std::abs(gamma_chazy({0.2, 0.9}) - fixture("GAMMA_PT")) < 1e-13);
    const cplx mu{0.2, 0.9};
    CHECK(std::abs(std::conj(gamma_chazy(mu)) + gamma_chazy(-std::conj(mu))) < 1e-13);
    // gamma = 4 d/dmu log eta
    const Fn le = [](const Point& x) { return log_dedekind_eta(x[0]); };
    DerivativeEngine e;
    e.radius = 0.2;
    const cplx d = derivative(le, {I}, {1}, e);
    CHECK(std::abs(4.0 * d - gamma_chazy(I)) < 1e-11);
}

TEST_CASE("Chazy equation at 0.1+1.3i") { CHECK(chazy_residual({0.1, 1.3}) < 1e-8); }

TEST_CASE("d gamma / d mu against a Richardson difference") {
    const double h = 1e-3;
    auto cd = [&](double s) { return (gamma_chazy(I + s) - gamma_chazy(I - s)) / (2.0 * s); };
    const cplx rich = (4.0 * cd(h / 2) - cd(h)) / 3.0;
    CHECK(std::abs(dgamma(I, 1) - rich) < 1e-8);
}

TEST_CASE("Weierstrass p on the square lattice") {
    const TorusCovering cov = covering_from_branch_points(BranchTriple{{cplx{1.0}, cplx{0.0}, cplx{-1.0}}});
    const cplx w = cov.omega, wp = cov.omega_prime;
    const cplx e1 = weierstrass_p(w, w, wp, 0), e2 = weierstrass_p(w + wp, w, wp, 0), e3 = weierstrass_p(wp, w, wp, 0);
    CHECK(std::abs(e1 - 1.0) < 1e-12);
    CHECK(std::abs(e2) < 1e-12);
    CHECK(std::abs(e3 + 1.0) < 1e-12);
    CHECK(std::abs(e1 + e2 + e3) < 1e-12);
    CHECK(std::abs(weierstrass_p(w, w, wp, 1)) < 1e-10);
    const auto [g2, g3] = lattice_invariants(w, wp);
    CHECK(std::abs(g2 - 4.0) < 1e-11);
    CHECK(std::abs(g3) < 1e-11);
    CHECK(std::abs(weierstrass_p(w, w, wp, 2) - (6.0 * e1 * e1 - g2 / 2.0)) < 1e-10);
    CHECK(std::abs(w - fixture("OMEGA_LEMN")) < 1e-14);
}

TEST_CASE("Weierstrass p errors") {
    const cplx w = 1.0, wp{0.2, 1.1};
    CHECK_THROWS_AS(weierstrass_p(0.0, w, wp, 0), pole_error);
    CHECK_THROWS_AS(weierstrass_p(2.0 * w + 2.0 * wp, w, wp, 1), pole_error);
    CHECK_THROWS_AS(weierstrass_p(0.3, w, 2.0 * w, 0), domain_error);
    CHECK_THROWS_AS(weierstrass_p(0.3, w, 0.0, 0), domain_error);
    CHECK_THROWS_AS(weierstrass_p(0.3, w, wp, 3), domain_error);
}

TEST_CASE("zeta(omega)") {
    const cplx w{0.9, 0.2}, wp{-0.1, 1.3};
    const cplx e1 = weierstrass_zeta_eta1(w, wp);
    CHECK(std::abs(e1 / w + (pi * I / (4.0 * w * w)) * gamma_chazy(wp / w)) < 1e-9);
    const cplx kappa{1.7, -0.4};
    CHECK(std::abs(weierstrass_zeta_eta1(kappa * w, kappa * wp) - e1 / kappa) < 1e-12);
    const TorusCovering cov = covering_from_branch_points(BranchTriple{{cplx{1.0}, cplx{0.0}, cplx{-1.0}}});
    CHECK(std::abs(weierstrass_zeta_eta1(cov.omega, cov.omega_prime) - fixture("ETA1_LEMN")) < 1e-14);
    CHECK_THROWS_AS(weierstrass_zeta_eta1(1.0, 0.0), domain_error);
}

TEST_CASE("Carlson R_F") {
    CHECK(std::abs(carlson_rf(1.0, 1.0, 1.0) - 1.0) < 1e-14);
    CHECK(std::abs(carlson_rf(4.0, 4.0, 4.0) - 0.5) < 1e-14);
    CHECK(std::abs(carlson_rf(0.0, 1.0, 2.0) - fixture("RF_012")) < 1e-14);
    CHECK_THROWS_AS(carlson_rf(0.0, 0.0, 1.0), domain_error);
}
