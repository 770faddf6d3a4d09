#pragma once

#include <array>

#include "g1f/common.hpp"
#include "g1f/specialfn.hpp"

namespace g1f {

struct BranchTriple {
    std::array<cplx, 3> lambda;
};

// lambda(s) = wp(s; 2 omega, 2 omega') + c. Labels: e1 <-> omega, e2 <-> omega + omega', e3 <-> omega'.
struct TorusCovering {
    std::array<cplx, 3> lambda{};
    cplx omega, omega_prime, c, mu;
    std::array<cplx, 3> e{};
    std::array<cplx, 3> ram_points{};
    cplx eta1, eta2;  // zeta(omega), zeta(omega')
};

struct CoverOptions {
    double degeneracy_tolerance = 1e-8;
    double roundtrip_tolerance = 1e-10;
    SeriesConfig series{};
};

// With a reference covering nearby, the half-periods are continued from it instead of being
// brought to the canonical representative.
TorusCovering covering_from_branch_points(const BranchTriple& b,
                                          const TorusCovering* reference = nullptr,
                                          const CoverOptions& opt = {});

cplx lambda_map(const TorusCovering& cov, cplx zeta, const SeriesConfig& cfg = {});

struct LocalFrame {
    std::array<cplx, 3> dzeta_dx{};
};

// wp''(s_i) = 2 prod_{j != i}(e_i - e_j); dzeta/dx_i = sqrt(2 / wp''), principal branch unless a
// reference frame is given, in which case the sign nearest to it is taken.
LocalFrame local_frame(const TorusCovering& cov, const LocalFrame* reference = nullptr);

double branch_scale(const BranchTriple& b);

}  // namespace g1f
