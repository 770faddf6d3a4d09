#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace g1f {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};
inline const cplx two_pi_i{0.0, 2.0 * std::numbers::pi};

struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct precision_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct pole_error : domain_error {
    using domain_error::domain_error;
};
struct degeneracy_error : domain_error {
    using domain_error::domain_error;
};

}  // namespace g1f
