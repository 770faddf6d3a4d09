#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "g1f/prepotential.hpp"

namespace g1f {

struct VerificationReport {
    std::string check_name;
    StructureKind kind;
    bool kind_specific = true;  // false for the kernel checks, which do not depend on the kind
    Point point;                        // flat coordinates (empty for branch-point checks)
    std::optional<BranchTriple> branch;  // branch-point checks
    ResidualMap residuals;
    ResidualMap tolerance_overrides;  // per-residual tolerance where it differs
    double tolerance = 1e-7;
    bool passed = false;
    DerivativeEngine engine;
    std::uint64_t seed = 0;
    std::vector<std::string> warnings;
    std::vector<std::string> notes;

    double tolerance_for(const std::string& name) const;
    // passed <=> every residual is finite and within its tolerance
    void finalize();
};

struct Tolerances {
    double wdvv = 1e-7;
    double euler = 1e-7;
    double scaling = 1e-8;
    double getzler = 1e-7;
    double f1 = 1e-8;
    double finite_difference = 1e-6;
    double h_quarter = 1e-8;
    double realness = 1e-9;
    double structure = 1e-10;
    double unit_field = 1e-7;
};

// F_i F_1^{-1} F_j - F_j F_1^{-1} F_i; with `second`, also the F_1 constancy between the points.
VerificationReport wdvv_residual(const StructureKind& k, const Point& p, const DerivativeEngine& eng,
                                 const Point* second = nullptr, const Tolerances& tol = {});
VerificationReport f1_metric_check(const StructureKind& k, const Point& p,
                                   const DerivativeEngine& eng, const Tolerances& tol = {});
VerificationReport associativity_check(const StructureKind& k, const Point& p,
                                       const DerivativeEngine& eng, const Tolerances& tol = {});
VerificationReport euler_check(const StructureKind& k, const Point& p, const DerivativeEngine& eng,
                               const Tolerances& tol = {});
// Both t6 exponents are evaluated for DoubleT.
VerificationReport getzler_check(const StructureKind& k, const Point& p,
                                 const DerivativeEngine& eng, const Tolerances& tol = {});
double getzler_constant(const StructureKind& k);

VerificationReport flatness_check(const BranchTriple& b, const FdOptions& fd = {},
                                  const Tolerances& tol = {});
VerificationReport rauch_check(const BranchTriple& b, const FdOptions& fd = {},
                               const Tolerances& tol = {});
VerificationReport tau_relation_check(const BranchTriple& b, const FdOptions& fd = {},
                                      const Tolerances& tol = {});

// F and G on coordinate-map images of the given branch triples (doubles). G is compared through
// differences G(p) - G(p_0), its additive constant being undetermined.
VerificationReport realness_check(const StructureKind& k, const std::vector<BranchTriple>& images,
                                  const Tolerances& tol = {});

// mu from branch points, the unit-field response and mu recovery from flat coordinates.
VerificationReport structure_check(const BranchTriple& b, const StructureKind& k,
                                   std::optional<cplx> expected_mu = std::nullopt,
                                   const Tolerances& tol = {});

// Node doubling and radius halving: residuals of wdvv/euler must stay within a factor of 10
// (above a noise floor).
VerificationReport robustness_check(const StructureKind& k, const Point& p,
                                    const DerivativeEngine& eng, const Tolerances& tol = {});

// Seeded sampling ------------------------------------------------------------------------------

// Points uniform in the disc of radius 1.5, pairwise separation at least 0.5.
std::vector<BranchTriple> random_branch_triples(std::uint64_t seed, int count);
BranchTriple lemniscatic_triple();
BranchTriple equianharmonic_triple();

// Coordinate-map images of random triples, each coordinate perturbed by a complex number of
// modulus <= 0.1 (<= 0.1 |t| for t3, t6, shrunk further on rejection) keeping modular arguments
// at Im > 0.05 and singular quantities away from zero.
std::vector<Point> sample_points(const StructureKind& k, std::uint64_t seed, int count);

struct SuiteOptions {
    int samples = 5;
    std::uint64_t seed = 0;
    DerivativeEngine engine{};
    Tolerances tol{};
    bool robustness = true;
    bool kernels = true;
};

// Every check for one kind: prepotential checks on the fixture images and the seeded samples,
// kernel checks on the lemniscatic and seeded triples, realness and structure maps.
std::vector<VerificationReport> run_suite(const StructureKind& k, const SuiteOptions& opt);

}  // namespace g1f
