#pragma once

// Evaluation of holomorphic functions from boundary samples via the Cauchy
// integral.  The plain trapezoid form is spectrally accurate away from the
// boundary but useless within a few node spacings of it.  The compensated
// form divides by the quadrature of the constant 1, which cancels the
// common near-boundary error and stays accurate up to and on the curve.

#include <cmath>
#include <vector>

#include "kernmap/geometry.hpp"
#include "kernmap/types.hpp"

namespace kernmap {

// Plain Cauchy integral h(z) = (1/(2 pi i)) sum h_i wdz_i / (z_i - z).
// Throws when z is close enough to the boundary that the trapezoid error
// is no longer negligible.
inline cplx cauchy_eval(const BoundaryGrid& g, const std::vector<cplx>& vals, cplx z) {
  if (g.min_boundary_distance(z) < 2.0 * g.max_spacing)
    throw NumericalError("plain Cauchy evaluation too close to the boundary");
  cplx acc = 0.0;
  for (int i = 0; i < g.total(); ++i) acc += vals[i] * g.wdz[i] / (g.z[i] - z);
  return acc / (2.0 * pi * iu);
}

// Compensated evaluator.  value, deriv and deriv2 are uniformly accurate on
// the closed domain; exactly at a grid node the boundary sample is returned.
class CauchyEvaluator {
 public:
  CauchyEvaluator(const BoundaryGrid& g, std::vector<cplx> vals)
      : g_(&g), vals_(std::move(vals)) {}

  const std::vector<cplx>& samples() const { return vals_; }

  cplx value(cplx z) const {
    const int near = nearest_node(z);
    if (near >= 0) return vals_[near];
    cplx num = 0.0, den = 0.0;
    for (int i = 0; i < g_->total(); ++i) {
      const cplx c = g_->wdz[i] / (g_->z[i] - z);
      num += vals_[i] * c;
      den += c;
    }
    return num / den;
  }

  cplx deriv(cplx z) const {
    if (nearest_node(z) >= 0)
      throw NumericalError("compensated derivative not defined at a boundary node");
    const cplx v = value(z);
    cplx num = 0.0, den = 0.0;
    for (int i = 0; i < g_->total(); ++i) {
      const cplx r = g_->z[i] - z;
      den += g_->wdz[i] / r;
      num += (vals_[i] - v) * g_->wdz[i] / (r * r);
    }
    return num / den;
  }

  cplx deriv2(cplx z) const {
    if (nearest_node(z) >= 0)
      throw NumericalError("compensated derivative not defined at a boundary node");
    const cplx v = value(z);
    const cplx vp = deriv(z);
    cplx num = 0.0, den = 0.0;
    for (int i = 0; i < g_->total(); ++i) {
      const cplx r = g_->z[i] - z;
      den += g_->wdz[i] / r;
      num += (vals_[i] - v - vp * r) * g_->wdz[i] / (r * r * r);
    }
    return 2.0 * num / den;
  }

 private:
  int nearest_node(cplx z) const {
    const double guard = 1e-12 * g_->diameter;
    for (int i = 0; i < g_->total(); ++i)
      if (std::abs(g_->z[i] - z) < guard) return i;
    return -1;
  }

  const BoundaryGrid* g_;
  std::vector<cplx> vals_;
};

}  // namespace kernmap
