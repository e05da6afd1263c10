#pragma once

// Shared fixtures for the test suite: the reference domains and an
// independent boundary-series oracle for the concentric ring.

#include <cmath>
#include <complex>
#include <vector>

#include "kernmap/curve.hpp"
#include "kernmap/geometry.hpp"
#include "kernmap/types.hpp"

namespace testsup {

using kernmap::cplx;
using kernmap::CurveRole;
using kernmap::CurveSpec;
using kernmap::DomainSpec;

inline DomainSpec disc_spec() {
  DomainSpec d;
  d.curves.push_back(CurveSpec::make_circle(0.0, 1.0, CurveRole::outer));
  return d;
}

inline DomainSpec annulus_spec(double q) {
  DomainSpec d;
  d.curves.push_back(CurveSpec::make_circle(0.0, q, CurveRole::inner));
  d.curves.push_back(CurveSpec::make_circle(0.0, 1.0, CurveRole::outer));
  return d;
}

inline DomainSpec threehole_spec() {
  DomainSpec d;
  d.curves.push_back(CurveSpec::make_circle(cplx(-0.45, 0.0), 0.18, CurveRole::inner));
  d.curves.push_back(CurveSpec::make_circle(cplx(0.45, 0.0), 0.18, CurveRole::inner));
  d.curves.push_back(CurveSpec::make_circle(0.0, 1.0, CurveRole::outer));
  return d;
}

// A wavy outer curve with an off-center hole.  Convergence on this domain
// is still spectral but slow enough that refinement is visible well above
// roundoff.
inline DomainSpec wiggly_spec() {
  DomainSpec d;
  d.curves.push_back(CurveSpec::make_circle(cplx(0.35, -0.40), 0.22, CurveRole::inner));
  d.curves.push_back(CurveSpec::make_fourier({cplx(1.0, 0.0), cplx(0.0, 0.0), cplx(0.0, 0.0),
                                              cplx(0.05, 0.0)},
                                             1, CurveRole::outer));
  return d;
}

// Boundary-series form of the first-kind kernel on q < |z| < 1: the
// monomials z^n are orthogonal over the two boundary circles with
// norms 2 pi (1 + q^(2n+1)), so the kernel is the normalized sum.
inline cplx annulus_szego_series(cplx z, cplx w, double q) {
  const cplx x = z * std::conj(w);
  cplx acc = 0.0;
  for (int n = 0; n <= 400; ++n) {
    const cplx term = std::pow(x, n) / (1.0 + std::pow(q, 2 * n + 1));
    acc += term;
    if (n > 4 && std::abs(term) < 1e-17) break;
  }
  for (int n = -1; n >= -400; --n) {
    const cplx term = std::pow(x, n) / (1.0 + std::pow(q, 2 * n + 1));
    acc += term;
    if (n < -4 && std::abs(term) < 1e-17) break;
  }
  return acc / (2.0 * kernmap::pi);
}

}  // namespace testsup
