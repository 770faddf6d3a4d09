#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "support.hpp"

#include <string>

#include "g1f/kernels.hpp"
#include "g1f/wdvv.hpp"

using namespace g1f;
using testing::fixture;

namespace {

const BranchTriple lem{{cplx{1.0}, cplx{0.0}, cplx{-1.0}}};

// Trapezoid rule along zeta = x + s * period, s in [0, 1); spectral for periodic integrands.
template <class K>
cplx period_integral(K&& k, cplx x, cplx period, int n = 400) {
    cplx s = 0.0;
    for (int m = 0; m < n; ++m) s += k(x + period * (static_cast<double>(m) / n));
    return s * period / static_cast<double>(n);
}

double worst(const CheckOutcome& o) {
    double w = 0.0;
    for (const auto& [n, v] : o.residuals) w = std::max(w, v);
    return w;
}

std::vector<BranchTriple> triples() {
    auto t = random_branch_triples(0, 5);
    t.insert(t.begin(), lem);
    return t;
}

}  // namespace

TEST_CASE("W periods") {
    for (const auto& b : {lem, random_branch_triples(4, 1)[0]}) {
        const TorusCovering c = covering_from_branch_points(b);
        const cplx q = 0.3 * c.omega + 0.2 * c.omega_prime;
        const cplx x = q + 0.5 * c.omega_prime;  // a path half a period away from the pole
        auto w = [&](cplx z) { return w_kernel(c, z, q); };
        CHECK(std::abs(period_integral(w, x, 2.0 * c.omega)) < 1e-8);
        const cplx xb = q + 0.5 * c.omega;
        CHECK(std::abs(period_integral(w, xb, 2.0 * c.omega_prime) - 2.0 * pi * I / (2.0 * c.omega)) < 1e-8);
        CHECK(std::abs(w_kernel(c, q, x) - w_kernel(c, x, q)) < 1e-12 * std::abs(w_kernel(c, q, x)));
    }
}

TEST_CASE("Schiffer and Bergman kernels") {
    const TorusCovering c = covering_from_branch_points(random_branch_triples(5, 1)[0]);
    testing::Rng rng(7);
    const cplx w1 = 1.0 / (2.0 * c.omega);
    std::vector<cplx> diffs;
    for (int k = 0; k < 3; ++k) {
        const cplx p = rng.in_box(0.1, 0.9, 0.1, 0.9) * c.omega, q = rng.in_box(-0.9, -0.1, 0.2, 0.8) * c.omega_prime;
        diffs.push_back(schiffer_kernel(c, p, q) - w_kernel(c, p, q));
        CHECK(std::abs(schiffer_kernel(c, p, q) - schiffer_kernel(c, q, p)) < 1e-10 * std::abs(schiffer_kernel(c, p, q)));
        CHECK(std::abs(bergman_kernel(c, p, std::conj(q)) - bergman_kernel(c, q, std::conj(p))) < 1e-15);
    }
    CHECK(std::abs(diffs[0] - diffs[1]) < 1e-10);
    CHECK(std::abs(diffs[0] - diffs[2]) < 1e-10);
    CHECK(std::abs(diffs[0] + pi / c.mu.imag() * w1 * w1) < 1e-10);

    const cplx q = 0.4 * c.omega + 0.3 * c.omega_prime;
    auto om = [&](cplx z) { return schiffer_kernel(c, z, q); };
    const cplx a_omega = period_integral(om, q + 0.5 * c.omega_prime, 2.0 * c.omega);
    CHECK(std::abs(a_omega + pi / c.mu.imag() * w1) < 1e-8);
    // a-period of B over the conjugate cycle, d conj(zeta) = conj(2 omega) ds
    const cplx a_bergman = bergman_kernel(c, 0.0, 0.0) * std::conj(2.0 * c.omega);
    CHECK(std::abs(a_omega + a_bergman) < 1e-8);
    // reproducing property: d conj(zeta) ^ d zeta = 2i dA, area |2 omega|^2 Im mu
    const double area = std::norm(2.0 * c.omega) * c.mu.imag();
    const cplx repro = bergman_kernel(c, 0.0, 0.0) * w1 * 2.0 * I * area / (2.0 * pi * I);
    CHECK(std::abs(repro - w1) < 1e-9);
}

TEST_CASE("basis change (a, b) -> (b, -a)") {
    const TorusCovering c = covering_from_branch_points(random_branch_triples(9, 1)[0]);
    TorusCovering s = c;
    s.omega = c.omega_prime;
    s.omega_prime = -c.omega;
    s.mu = -1.0 / c.mu;
    s.eta1 = c.eta2;
    s.eta2 = -c.eta1;
    REQUIRE(s.mu.imag() > 0.0);
    const cplx p = 0.3 * c.omega + 0.1 * c.omega_prime, q = -0.2 * c.omega + 0.6 * c.omega_prime;
    CHECK(std::abs(schiffer_kernel(s, p, q) - schiffer_kernel(c, p, q)) < 1e-9);
    CHECK(std::abs(bergman_kernel(s, p, std::conj(q)) - bergman_kernel(c, p, std::conj(q))) < 1e-9);
    // W is basis dependent: its additive constant changes
    CHECK(std::abs(w_kernel(s, p, q) - w_kernel(c, p, q)) > 1e-3);
}

TEST_CASE("kernel errors") {
    const TorusCovering c = covering_from_branch_points(lem);
    CHECK_THROWS_AS(w_kernel(c, 0.2, 0.2), pole_error);
    CHECK_THROWS_AS(schiffer_kernel(c, 0.2, 0.2 + 2.0 * c.omega), pole_error);
}

TEST_CASE("rotation coefficients on the lemniscatic covering") {
    const RotationData rot = rotation_data(covering_from_branch_points(lem));
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            if (i == j) continue;
            const std::string name = "ROT_LEMN_" + std::to_string(i) + std::to_string(j);
            CHECK_MESSAGE(std::abs(rot.beta[i][j] - fixture(name)) < 1e-12, name);
        }
    for (int i = 0; i < 3; ++i) CHECK(std::abs(rot.s_diag[i] - fixture("S_LEMN_" + std::to_string(i))) < 1e-10);
}

TEST_CASE("rotation coefficient structure") {
    for (const auto& b : triples()) {
        const RealDouble d = make_double(b);
        const RotationData rot = rotation_data(d);
        const cplx w1 = 1.0 / (2.0 * d.hol.omega);
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                CHECK(std::abs(rot.beta[i][j] - rot.beta[j][i]) < 1e-12);
                if (i != j) CHECK(std::abs(rot.beta[i + 3][j + 3] - std::conj(rot.beta[i][j])) < 1e-10);
            }
            const cplx f = d.frame_hol.dzeta_dx[i];
            CHECK(std::abs(rot.omega_diag[i] - rot.s_diag[i] + pi / d.hol.mu.imag() * w1 * w1 * f * f) < 1e-9);
            CHECK(std::abs(rot.omega_diag[i] - rot.s_diag[i] - rot.sigma_diag[i]) < 1e-9);
        }
    }
}

TEST_CASE("flatness, Rauch and tau relations on six triples") {
    for (const auto& b : triples()) {
        CAPTURE(b.lambda[0]);
        const CheckOutcome fl = check_flatness(b);
        CHECK(fl.residuals.at("flat1") < 1e-6);
        CHECK(fl.residuals.at("flat2") < 1e-6);
        CHECK(fl.residuals.at("euler_beta") < 1e-6);
        CHECK(worst(check_rauch(b)) < 1e-6);
        const CheckOutcome tau = check_tau_relations(b);
        CHECK(tau.residuals.at("h_quarter_omega") < 1e-8);
        CHECK(worst(tau) < 1e-6);
    }
}

TEST_CASE("Hamiltonians") {
    const TorusCovering c = covering_from_branch_points(lem);
    const Hamiltonians h = hamiltonians(c);
    const RotationData rot = rotation_data(c);
    for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(h.h[i] - rot.omega_diag[i] / 4.0) < 1e-8);
        // real branch points
        CHECK(std::abs(h.h_bar[i] - std::conj(h.h[i])) < 1e-8);
        CHECK(std::isfinite(std::abs(h.h[i])));
    }
}
