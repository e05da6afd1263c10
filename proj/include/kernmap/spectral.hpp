#pragma once

// Trigonometric interpolation and differentiation on uniform periodic grids.
// Grid sizes stay in the hundreds, so the plain O(m^2) transforms are fine.

#include <cstddef>
#include <vector>

#include "kernmap/types.hpp"

namespace kernmap {

// Coefficients c_k, k = -m/2 .. m/2-1, of samples f_j = f(2 pi j / m), m even.
inline std::vector<cplx> fourier_coeffs(const std::vector<cplx>& f) {
  const int m = static_cast<int>(f.size());
  std::vector<cplx> c(m);
  const double step = 2.0 * pi / m;
  for (int k = -m / 2; k < m / 2; ++k) {
    cplx acc = 0.0;
    for (int j = 0; j < m; ++j) acc += f[j] * std::exp(cplx(0.0, -k * step * j));
    c[k + m / 2] = acc / static_cast<double>(m);
  }
  return c;
}

// Derivative samples d/dt of the interpolant.  The unmatched Nyquist mode
// k = -m/2 carries no derivative, the usual symmetric convention.
inline std::vector<cplx> spectral_derivative(const std::vector<cplx>& f) {
  const int m = static_cast<int>(f.size());
  const std::vector<cplx> c = fourier_coeffs(f);
  std::vector<cplx> out(m);
  const double step = 2.0 * pi / m;
  for (int j = 0; j < m; ++j) {
    cplx acc = 0.0;
    for (int k = -m / 2 + 1; k < m / 2; ++k)
      acc += cplx(0.0, k) * c[k + m / 2] * std::exp(cplx(0.0, k * step * j));
    out[j] = acc;
  }
  return out;
}

// Evaluates the interpolant at arbitrary t; exact at the nodes.
struct TrigInterp {
  std::vector<cplx> c;
  int m = 0;

  explicit TrigInterp(const std::vector<cplx>& samples)
      : c(fourier_coeffs(samples)), m(static_cast<int>(samples.size())) {}

  cplx operator()(double t) const {
    cplx acc = c[0] * std::cos(0.5 * m * t);
    for (int k = -m / 2 + 1; k < m / 2; ++k)
      acc += c[k + m / 2] * std::exp(cplx(0.0, k * t));
    return acc;
  }
};

}  // namespace kernmap
