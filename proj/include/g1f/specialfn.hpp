#pragma once

#include <array>
#include <utility>

#include "g1f/common.hpp"

namespace g1f {

struct SeriesConfig {
    int max_terms = 64;
    double tail_tolerance = 1e-16;

    void validate() const;
};

// Jacobi theta_1(z | q = exp(i pi mu)) with theta_1(z + pi) = -theta_1(z).
cplx theta1(cplx z, cplx mu, int deriv_order, const SeriesConfig& cfg = {});

// Orders 0..4 in one pass (the fourth is needed for wp'').
std::array<cplx, 5> theta1_derivs(cplx z, cplx mu, const SeriesConfig& cfg = {});

cplx dedekind_eta(cplx mu, const SeriesConfig& cfg = {});

// Branch continuous on the upper half-plane, equal to i pi mu / 12 + sum log(1 - q^{2n}).
cplx log_dedekind_eta(cplx mu, const SeriesConfig& cfg = {});

// gamma(mu) = (pi i / 3) E_2(mu) = 4 d/dmu log eta(mu).
cplx gamma_chazy(cplx mu, const SeriesConfig& cfg = {});

// Reduced basis of the lattice {2 w1 m + 2 w2 n}, Im(w2/w1) > 0 and w2/w1 in the
// standard fundamental domain. The input half-periods are a1*w1 + b1*w2 and a2*w1 + b2*w2.
struct ReducedLattice {
    cplx w1, w2, tau;
    long a1, b1, a2, b2;
};
ReducedLattice reduce_lattice(cplx omega, cplx omega_prime);

// deriv_order 0..2 for the lattice {2 omega, 2 omega'}.
cplx weierstrass_p(cplx z, cplx omega, cplx omega_prime, int deriv_order,
                   const SeriesConfig& cfg = {});
std::array<cplx, 3> weierstrass_p_all(cplx z, cplx omega, cplx omega_prime,
                                      const SeriesConfig& cfg = {});

// zeta(omega); the other quasi-period follows from eta1 omega' - eta2 omega = pi i / 2.
cplx weierstrass_zeta_eta1(cplx omega, cplx omega_prime, const SeriesConfig& cfg = {});

// (g2, g3)
std::pair<cplx, cplx> lattice_invariants(cplx omega, cplx omega_prime,
                                         const SeriesConfig& cfg = {});

cplx carlson_rf(cplx x, cplx y, cplx z);

}  // namespace g1f
