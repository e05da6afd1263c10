#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace kernmap {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846264338327950288;
inline constexpr cplx iu{0.0, 1.0};

// Invalid domain description, malformed config, out-of-domain query point:
// anything the caller specified wrongly.  The CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// A solve, search, or quadrature failed to reach its target accuracy.
// The CLI maps this to exit code 3.
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace kernmap
