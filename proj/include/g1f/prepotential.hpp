#pragma once

#include <array>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "g1f/frobenius.hpp"

namespace g1f {

using Point = std::vector<cplx>;
using Fn = std::function<cplx(const Point&)>;

struct PrepotentialOptions {
    double singularity_tolerance = 1e-3;  // relative to max(1, |t|_inf)
    SeriesConfig series{};
};

cplx eval_F(const StructureKind& k, const Point& t, const PrepotentialOptions& opt = {});

// The two gamma-carrying terms of a double (t2^4 term, t5^4 term); HoloS returns (term, 0).
std::pair<cplx, cplx> gamma_terms(const StructureKind& k, const Point& t,
                                  const PrepotentialOptions& opt = {});

// Modular arguments of the gamma / eta terms: (t2 term, t5 term); the second is 0 for HoloS.
std::array<cplx, 2> modular_arguments(const StructureKind& k, const Point& t);

// Power of t6 in the DoubleT G-function: t6^{-1/2} (default) or t6^{-3/4}. Both forms are in
// circulation; E(G) cannot tell them apart since nu_6 = 0.
enum class GExponent { Half, ThreeQuarters };

// G with additive constant 0. With an anchor, each logarithm is continued from the anchor
// (log x(anchor) + Log(x / x(anchor))) so that G is analytic on a small disc around it.
cplx eval_G(const StructureKind& k, const Point& t, GExponent ge = GExponent::Half,
            const Point* anchor = nullptr, const PrepotentialOptions& opt = {});

enum class CrossScheme { NestedCauchy, MixedCentral };

struct DerivativeEngine {
    double radius = 0.05;
    int nodes = 32;
    CrossScheme cross = CrossScheme::NestedCauchy;

    void validate() const;
};

// Derivative of order alpha (alpha[i] per variable, total <= 3) by trapezoid Cauchy integrals.
cplx derivative(const Fn& f, const Point& p, const std::vector<int>& alpha,
                const DerivativeEngine& eng);
std::vector<cplx> gradient(const Fn& f, const Point& p, const DerivativeEngine& eng);

// Largest radius <= eng.radius (halving) for which every Cauchy circle of F (or G) around p
// stays well inside the analyticity domain.
double safe_radius(const StructureKind& k, const Point& p, double start, bool for_G = false);

struct ThirdTensor {
    std::vector<Eigen::MatrixXcd> F;  // F[i](l, m) = d^3 F / dt_i dt_l dt_m
    double symmetry_residual = 0.0;
    double radius = 0.0;
};
ThirdTensor third_tensor(const StructureKind& k, const Point& p, const DerivativeEngine& eng,
                         const PrepotentialOptions& opt = {});

}  // namespace g1f
