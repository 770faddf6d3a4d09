#pragma once

#include <random>
#include <string>

#include <doctest.h>

#include "g1f/fixtures.hpp"

namespace testing {

using g1f::cplx;

inline const g1f::FixtureMap& fixtures() {
    static const g1f::FixtureMap f = g1f::load_fixtures(g1f::fixture_path());
    return f;
}

inline cplx fixture(const std::string& name) {
    const auto it = fixtures().find(name);
    REQUIRE_MESSAGE(it != fixtures().end(), "missing fixture " << name);
    return it->second;
}

struct Rng {
    std::mt19937_64 g;
    explicit Rng(std::uint64_t seed) : g(seed) {}
    double u01() { return static_cast<double>(g() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * u01(); }
    cplx in_box(double a, double b, double c, double d) { return {uniform(a, b), uniform(c, d)}; }
};

}  // namespace testing
