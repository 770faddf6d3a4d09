#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "g1f/torus_cover.hpp"

namespace g1f {

// Six independent coordinates (lambda_1..3, lambda-bar_1..3). The conjugate block is the exact
// conjugate function conj(F(conj(lambda-bar))), continued from the holomorphic base covering.
struct RealDouble {
    std::array<cplx, 6> coords{};
    TorusCovering hol;   // covering of lambda
    TorusCovering raw;   // covering of conj(lambda-bar), before conjugation
    TorusCovering anti;  // conj of raw, field by field
    LocalFrame frame_hol, frame_anti;
    cplx im_b;  // (mu - mu-bar) / (2i)
};

RealDouble make_double(const std::array<cplx, 6>& coords, const RealDouble* reference = nullptr,
                       const CoverOptions& opt = {});
RealDouble make_double(const BranchTriple& b, const CoverOptions& opt = {});

// Values of the kernels divided by d s_P d s_Q (or d s_P d conj(s_Q)).
cplx w_kernel(const TorusCovering& cov, cplx zeta_p, cplx zeta_q, const SeriesConfig& cfg = {});
cplx schiffer_kernel(const TorusCovering& cov, cplx zeta_p, cplx zeta_q,
                     const SeriesConfig& cfg = {});
cplx bergman_kernel(const TorusCovering& cov, cplx zeta_p, cplx zeta_q_conj);

// Same on a real double with independent blocks. The anti version takes points of the
// conjugate torus (conjugate coordinates).
cplx schiffer_hol(const RealDouble& d, cplx zeta_p, cplx zeta_q, const SeriesConfig& cfg = {});
cplx schiffer_anti(const RealDouble& d, cplx zbar_p, cplx zbar_q, const SeriesConfig& cfg = {});
cplx bergman_value(const RealDouble& d);

// Index set {0,1,2} = {1,2,3}, {3,4,5} = {1bar,2bar,3bar}.
struct RotationData {
    std::array<std::array<cplx, 6>, 6> beta{};
    std::array<cplx, 6> omega_diag{};  // Omega_i, then conj-block values
    std::array<cplx, 6> s_diag{};      // S_i, then conj-block values
    std::array<cplx, 6> sigma_diag{};  // Sigma_i = -pi (Im B)^{-1} omega_1(P_i)^2
};

RotationData rotation_data(const RealDouble& d, const SeriesConfig& cfg = {});
RotationData rotation_data(const TorusCovering& cov, const SeriesConfig& cfg = {});

struct Hamiltonians {
    std::array<cplx, 3> h{}, h_bar{};
};
Hamiltonians hamiltonians(const RealDouble& d, const RotationData& rot);
Hamiltonians hamiltonians(const TorusCovering& cov);

using ResidualMap = std::map<std::string, double>;

struct CheckOutcome {
    ResidualMap residuals;
    std::vector<std::string> warnings;
    std::vector<std::string> notes;
};

struct FdOptions {
    double step = 1e-4;          // relative to branch_scale
    bool halving_check = true;
};

CheckOutcome check_flatness(const BranchTriple& b, const FdOptions& fd = {});
CheckOutcome check_rauch(const BranchTriple& b, const FdOptions& fd = {});
CheckOutcome check_tau_relations(const BranchTriple& b, const FdOptions& fd = {});

// Central difference of g along coordinate k (0..5) of the real double, neighbours continued
// from base.
template <class G>
auto fd_partial(const RealDouble& base, int k, double h, G&& g) {
    auto shifted = [&](double s) {
        auto c = base.coords;
        c[k] += s;
        return make_double(c, &base);
    };
    const auto gp = g(shifted(h));
    const auto gm = g(shifted(-h));
    auto out = gp;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (gp[i] - gm[i]) / (2.0 * h);
    return out;
}

}  // namespace g1f
