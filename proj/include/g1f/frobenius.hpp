#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "g1f/kernels.hpp"

namespace g1f {

enum class Kind { HoloS, DoubleS, DoubleT, DoubleCombo };

struct StructureKind {
    Kind kind = Kind::HoloS;
    cplx sigma = 1.0;  // DoubleCombo only

    int dim() const { return kind == Kind::HoloS ? 3 : 6; }
    void validate() const;
};

std::string kind_name(Kind k);
Kind parse_kind(const std::string& s);  // holo-s, double-s, double-t, double-combo

struct FlatCoords {
    std::vector<cplx> t;
};

FlatCoords flat_coordinates(const RealDouble& d, const StructureKind& k);
FlatCoords flat_coordinates(const TorusCovering& cov, const StructureKind& k);

struct ConstantMetric {
    Eigen::MatrixXcd eta;
};
ConstantMetric constant_metric(const StructureKind& k);

struct EulerData {
    std::vector<double> nu;
    double nu_F = 2.0;
    double charge = 1.0;
};
EulerData euler_data(const StructureKind& k);

// (mu, mu-bar) read back from the flat coordinates of the doubles.
std::pair<cplx, cplx> recover_moduli(const StructureKind& k, const FlatCoords& t);

// Deviation from the realness/conjugation pattern of the coordinate image (doubles).
double realness_residual(const StructureKind& k, const FlatCoords& t);

// Shift lambda -> lambda + delta on all six coordinates: max_A |Delta t_A / delta + delta_{A1}|.
CheckOutcome check_unit_field(const BranchTriple& b, const StructureKind& k, double delta = 1e-5);
// Scaling lambda -> (1 + eps) lambda: max_A |d t_A/d eps - nu_A t_A| / max(1, |t_A|).
CheckOutcome check_euler_scaling(const BranchTriple& b, const StructureKind& k, double eps = 1e-5);

}  // namespace g1f
