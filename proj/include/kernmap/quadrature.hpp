#pragma once

// Adaptive Gauss-Legendre quadrature for smooth complex integrands on a
// real parameter interval.  Panels are bisected until the 16-point value
// is reproduced to the requested tolerance.

#include <array>
#include <cmath>
#include <functional>

#include "kernmap/types.hpp"

namespace kernmap {

namespace detail {

struct GaussRule {
  std::array<double, 16> x{};  // nodes on [-1, 1]
  std::array<double, 16> w{};

  GaussRule() {
    // Nodes are the roots of the degree-16 Legendre polynomial, found by
    // Newton iteration from the Chebyshev initial guess.
    const int n = 16;
    for (int k = 0; k < n; ++k) {
      double xx = std::cos(pi * (k + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = xx;
        for (int j = 2; j <= n; ++j) {
          const double p2 = ((2.0 * j - 1.0) * xx * p1 - (j - 1.0) * p0) / j;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (xx * p1 - p0) / (xx * xx - 1.0);
        const double dx = p1 / dp;
        xx -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      x[k] = xx;
      w[k] = 2.0 / ((1.0 - xx * xx) * dp * dp);
    }
  }
};

inline const GaussRule& gauss16() {
  static const GaussRule rule;
  return rule;
}

}  // namespace detail

inline cplx gauss_panel(const std::function<cplx(double)>& f, double a, double b) {
  const auto& rule = detail::gauss16();
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  cplx acc = 0.0;
  for (int k = 0; k < 16; ++k) acc += rule.w[k] * f(mid + half * rule.x[k]);
  return acc * half;
}

namespace detail {

inline cplx adapt(const std::function<cplx(double)>& f, double a, double b, cplx whole,
                  double tol, int depth) {
  if (depth > 24) throw NumericalError("adaptive quadrature did not converge");
  const double mid = 0.5 * (a + b);
  const cplx left = gauss_panel(f, a, mid);
  const cplx right = gauss_panel(f, mid, b);
  if (std::abs(left + right - whole) <= tol) return left + right;
  return adapt(f, a, mid, left, 0.5 * tol, depth + 1) +
         adapt(f, mid, b, right, 0.5 * tol, depth + 1);
}

}  // namespace detail

inline cplx integrate(const std::function<cplx(double)>& f, double a, double b,
                      double tol = 1e-12) {
  return detail::adapt(f, a, b, gauss_panel(f, a, b), tol, 0);
}

}  // namespace kernmap
