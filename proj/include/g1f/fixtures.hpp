#pragma once

#include <map>
#include <string>

#include "g1f/common.hpp"

namespace g1f {

using FixtureMap = std::map<std::string, cplx>;

// $G1FROB_FIXTURES if set, else the data/fixtures.json baked in at configure time.
std::string fixture_path();

// The "values" object of a fixture file: name -> {re, im} decimal strings.
FixtureMap load_fixtures(const std::string& path);

// The library's own values for every fixture name, computed in double precision.
FixtureMap library_fixture_values();

void write_fixtures(const std::string& path, const FixtureMap& values);

}  // namespace g1f
