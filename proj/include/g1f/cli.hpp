#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "g1f/wdvv.hpp"

namespace g1f {

// Bad flags, malformed literals: exit code 2.
struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// "a+bi", "a", "bi", "-i", with optional spaces. Errors give the 1-based column.
cplx parse_complex(const std::string& s);
// Comma-separated complex literals.
std::vector<cplx> parse_point(const std::string& s);

enum class Format { Json, Csv, Text };

struct RunConfig {
    std::string command;
    std::vector<StructureKind> kinds;
    std::uint64_t seed = 0;
    int samples = 5;
    Tolerances tol{};
    DerivativeEngine engine{};
    std::string output_path;  // empty: stdout
    Format format = Format::Text;
};

std::string format_residual(double v);  // 17 significant digits
std::string report_json(const RunConfig& cfg, const std::vector<VerificationReport>& reports);
std::string report_csv(const std::vector<VerificationReport>& reports);
std::string report_text(const std::vector<VerificationReport>& reports);

// Full command line; 0 all checks passed, 1 a check failed, 2 usage or domain error.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace g1f
