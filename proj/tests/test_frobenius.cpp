#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "support.hpp"

#include "g1f/frobenius.hpp"
#include "g1f/wdvv.hpp"

using namespace g1f;

namespace {

const BranchTriple lem{{cplx{1.0}, cplx{0.0}, cplx{-1.0}}};
const Kind all_kinds[] = {Kind::HoloS, Kind::DoubleS, Kind::DoubleT, Kind::DoubleCombo};

}  // namespace

TEST_CASE("kind names") {
    for (Kind k : all_kinds) CHECK(parse_kind(kind_name(k)) == k);
    CHECK_THROWS_AS(parse_kind("double-q"), domain_error);
    CHECK_THROWS_AS((StructureKind{Kind::DoubleCombo, 1e-8}.validate()), domain_error);
}

TEST_CASE("HoloS coordinates on the lemniscatic covering") {
    const FlatCoords t = flat_coordinates(covering_from_branch_points(lem), StructureKind{Kind::HoloS});
    REQUIRE(t.t.size() == 3);
    CHECK(std::abs(t.t[2] - 1.0 / (2.0 * pi)) < 1e-12);
    const TorusCovering c = covering_from_branch_points(lem);
    CHECK(std::abs(t.t[1] - 1.0 / c.omega) < 1e-12);
}

TEST_CASE("moduli recovery and coordinate patterns") {
    for (const auto& b : random_branch_triples(17, 10)) {
        const RealDouble d = make_double(b);
        for (Kind kk : {Kind::DoubleS, Kind::DoubleT, Kind::DoubleCombo}) {
            const StructureKind k{kk};
            const FlatCoords t = flat_coordinates(d, k);
            const auto [mu, mub] = recover_moduli(k, t);
            CHECK(std::abs(mu - d.hol.mu) < 1e-9);
            CHECK(std::abs(mub - d.anti.mu) < 1e-9);
            CHECK(realness_residual(k, t) < 1e-9);
        }
        const FlatCoords ts = flat_coordinates(d, StructureKind{Kind::DoubleS});
        CHECK(std::abs(std::conj(ts.t[5]) - (ts.t[5] - 1.0 / two_pi_i)) < 1e-10);
        const FlatCoords tt = flat_coordinates(d, StructureKind{Kind::DoubleT});
        CHECK(std::abs(tt.t[2] / tt.t[5] - d.hol.mu) < 1e-10);
        CHECK(std::abs((two_pi_i * tt.t[2] - 1.0) / (two_pi_i * tt.t[5]) - d.anti.mu) < 1e-9);
    }
}

TEST_CASE("constant metrics") {
    const Eigen::MatrixXcd h = constant_metric(StructureKind{Kind::HoloS}).eta;
    CHECK(std::abs(h(1, 1) - 0.5) == 0.0);
    CHECK(std::abs(h(0, 2) + 1.0) == 0.0);
    CHECK(std::abs(h(2, 0) + 1.0) == 0.0);
    const Eigen::MatrixXcd c = constant_metric(StructureKind{Kind::DoubleCombo, 1.0}).eta;
    CHECK(std::abs(c(0, 5) - 0.5) == 0.0);
    const Eigen::MatrixXcd s = constant_metric(StructureKind{Kind::DoubleS}).eta;
    CHECK(std::abs(s(3, 5) - 1.0) == 0.0);
    const Eigen::MatrixXcd t = constant_metric(StructureKind{Kind::DoubleT}).eta;
    CHECK(std::abs(t(0, 5) - 1.0) == 0.0);
    CHECK(std::abs(t(2, 3) + 1.0) == 0.0);
    for (Kind kk : all_kinds) {
        const Eigen::MatrixXcd m = constant_metric(StructureKind{kk}).eta;
        CHECK((m - m.transpose()).cwiseAbs().maxCoeff() == 0.0);
        CHECK(std::abs(m.determinant()) > 1e-3);
    }
}

TEST_CASE("Euler data") {
    const EulerData h = euler_data(StructureKind{Kind::HoloS});
    CHECK(h.nu == std::vector<double>{1.0, 0.5, 0.0});
    CHECK(h.nu_F == 2.0);
    const EulerData s = euler_data(StructureKind{Kind::DoubleS});
    CHECK(s.nu[3] == 1.0);
    CHECK(s.nu[4] == 0.5);
    CHECK(s.nu[5] == 0.0);
    for (Kind kk : all_kinds) CHECK(euler_data(StructureKind{kk}).nu_F == 3.0 - euler_data(StructureKind{kk}).charge);
}

TEST_CASE("unit field and scaling") {
    for (const auto& b : {lem, random_branch_triples(2, 1)[0]}) {
        for (Kind kk : {Kind::HoloS, Kind::DoubleS, Kind::DoubleT}) {
            CAPTURE(kind_name(kk));
            CHECK(check_unit_field(b, StructureKind{kk}).residuals.at("unit_field") < 1e-7);
            CHECK(check_euler_scaling(b, StructureKind{kk}).residuals.at("euler_scaling") < 1e-7);
        }
        CHECK(check_euler_scaling(b, StructureKind{Kind::DoubleCombo}).residuals.at("euler_scaling") < 1e-7);
    }
}

TEST_CASE("DoubleCombo: the marked coordinate moves at twice the unit rate") {
    // t1 = s + t / sigma with s itself shifting by -1: recorded, not hidden
    const CheckOutcome o = check_unit_field(lem, StructureKind{Kind::DoubleCombo});
    CHECK(std::abs(o.residuals.at("unit_field") - 1.0) < 1e-6);
}
