#pragma once

// Closed-form reference values on the unit disc and the concentric annulus
// q < |z| < 1.  These are independent of the boundary-integral machinery
// and exist solely so that computed quantities can be compared against
// ground truth on domains where ground truth is available.

#include <cmath>
#include <complex>

#include "kernmap/path.hpp"
#include "kernmap/types.hpp"

namespace kernmap {

inline cplx disc_szego(cplx z, cplx w) { return 1.0 / (2.0 * pi * (1.0 - std::conj(w) * z)); }

inline cplx disc_garabedian(cplx z, cplx w) { return 1.0 / (2.0 * pi * (z - w)); }

inline cplx disc_mobius(cplx z, cplx a) { return (z - a) / (1.0 - std::conj(a) * z); }

inline double disc_green(cplx z, cplx w) {
  return -std::log(std::abs(z - w)) + std::log(std::abs(1.0 - std::conj(w) * z));
}

inline cplx disc_green_dz(cplx z, cplx w) {
  return -0.5 / (z - w) - 0.5 * std::conj(w) / (1.0 - std::conj(w) * z);
}

// The disc Green's function recovered as a path integral of the rational
// gradient R(z, w, conj(w)) = -(1 - w conj(w)) / (2 (z - w)(1 - conj(w) z))
// from the boundary point 1.  The real part is path independent.
inline double disc_alpha_path(cplx w, const PathSpec& path) {
  const cplx v = std::conj(w);
  const cplx num = -(1.0 - w * v) * 0.5;
  const double val =
      integrate_along_path(path, [&](cplx z) { return num / ((z - w) * (1.0 - v * z)); }, 1e-12)
          .real();
  return 2.0 * val;
}

namespace detail {

inline void check_annulus_modulus(double q) {
  if (!(q > 0.0 && q < 0.9))
    throw ConfigError("annulus reference formulas require 0 < q < 0.9");
}

}  // namespace detail

// Green's function of the annulus by the method of images.  Each image term
// is the log-modulus of a function holomorphic in z with its zero outside
// the closed annulus, so the sum is harmonic where it needs to be and the
// boundary values cancel circle by circle.
inline double annulus_green(cplx z, cplx w, double q) {
  detail::check_annulus_modulus(q);
  double acc = -std::log(std::abs(z - w)) +
               std::log(std::abs(z)) * std::log(std::abs(w)) / std::log(q);
  const cplx zw = z * std::conj(w);
  double q2k = 1.0;  // q^{2k}
  for (int k = 0; k < 200; ++k) {
    const double q2k2 = q2k * q * q;  // q^{2k+2}
    const double term = std::log(std::abs(1.0 - q2k * zw)) -
                        std::log(std::abs(1.0 - q2k2 * z / w)) +
                        std::log(std::abs(1.0 - q2k2 / zw)) -
                        std::log(std::abs(1.0 - q2k2 * w / z));
    acc += term;
    if (std::abs(term) < 1e-15 && k > 2) return acc;
    q2k = q2k2;
  }
  throw NumericalError("annulus image series did not converge");
}

// Derivative d/dz of the image series, term by term, using
// d/dz log|F(z)| = F'(z) / (2 F(z)) for holomorphic F.
inline cplx annulus_green_dz(cplx z, cplx w, double q) {
  detail::check_annulus_modulus(q);
  const cplx wb = std::conj(w);
  cplx acc = -0.5 / (z - w) + std::log(std::abs(w)) / (2.0 * z * std::log(q));
  double q2k = 1.0;
  for (int k = 0; k < 200; ++k) {
    const double q2k2 = q2k * q * q;
    const cplx term = -0.5 * q2k * wb / (1.0 - q2k * z * wb) +
                      0.5 * (q2k2 / w) / (1.0 - q2k2 * z / w) +
                      0.5 * (q2k2 / (z * z * wb)) / (1.0 - q2k2 / (z * wb)) -
                      0.5 * (q2k2 * w / (z * z)) / (1.0 - q2k2 * w / z);
    acc += term;
    if (std::abs(term) < 1e-15 && k > 2) return acc;
    q2k = q2k2;
  }
  throw NumericalError("annulus image series did not converge");
}

// Harmonic measure of the inner circle |z| = q with respect to the annulus.
inline double annulus_harmonic(cplx z, double q) {
  detail::check_annulus_modulus(q);
  return std::log(std::abs(z)) / std::log(q);
}

}  // namespace kernmap
