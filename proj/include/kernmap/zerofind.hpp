#pragma once

// Zero location for holomorphic functions on a multiply connected domain.
// The total count inside the domain comes from the argument principle on
// the boundary samples.  Individual zeros are found by recursive box
// subdivision with winding-number counts on box contours, Newton polish,
// and a final per-root multiplicity count on a tiny centered contour.

#include <cmath>
#include <functional>
#include <vector>

#include "kernmap/geometry.hpp"
#include "kernmap/quadrature.hpp"
#include "kernmap/types.hpp"

namespace kernmap {

struct LocatedZero {
  cplx point;
  int multiplicity = 1;
};

using Holo = std::function<cplx(cplx)>;

// Number of zeros enclosed by the full boundary, from samples of f and f'
// on the grid.  f must be zero free on the boundary itself.
inline int boundary_zero_count(const BoundaryGrid& g, const std::vector<cplx>& f,
                               const std::vector<cplx>& fp) {
  cplx acc = 0.0;
  for (int i = 0; i < g.total(); ++i) acc += fp[i] / f[i] * g.wdz[i];
  const double count = (acc / (2.0 * pi * iu)).real();
  const double resid = std::abs(acc / (2.0 * pi * iu) - std::round(count));
  if (resid > 0.01) throw NumericalError("boundary zero count is not close to an integer");
  return static_cast<int>(std::lround(count));
}

struct ZeroSearchOptions {
  double margin = 0.0;     // boundary strip excluded from the box search
  double polish_box = 0.0; // box diagonal at which Newton polish starts
  int max_boxes = 200000;
};

namespace detail {

struct Box {
  cplx center;
  double half = 0.0;  // half side length

  double half_diag() const { return half * std::sqrt(2.0); }
};

// Winding count on the box contour, with slight inflations retried when the
// quadrature misbehaves (a zero close to or on an edge).  Returns -1 when no
// reliable integer emerges.
inline int box_count(const Holo& f, const Holo& fp, const Box& b) {
  for (double scale : {1.0, 1.0111, 0.9871, 1.0253}) {
    const double h = b.half * scale;
    const cplx c[4] = {b.center + cplx(-h, -h), b.center + cplx(h, -h), b.center + cplx(h, h),
                       b.center + cplx(-h, h)};
    try {
      cplx acc = 0.0;
      for (int e = 0; e < 4; ++e) {
        const cplx a = c[e], d = c[(e + 1) % 4];
        acc += integrate(
            [&](double s) {
              const cplx z = a + s * (d - a);
              return fp(z) / f(z) * (d - a);
            },
            0.0, 1.0, 1e-6);
      }
      const cplx turns = acc / (2.0 * pi * iu);
      const double nearest = std::round(turns.real());
      if (std::abs(turns - nearest) < 0.05 && nearest >= 0.0)
        return static_cast<int>(nearest);
    } catch (const NumericalError&) {
    }
  }
  return -1;
}

inline bool newton_polish(const Holo& f, const Holo& fp, cplx start, double scale, cplx& root) {
  cplx z = start;
  for (int it = 0; it < 80; ++it) {
    const cplx fv = f(z);
    const cplx dv = fp(z);
    if (std::abs(dv) == 0.0) return false;
    const cplx step = fv / dv;
    z -= step;
    if (std::abs(z - start) > 8.0 * scale) return false;
    if (std::abs(step) < 1e-14 * std::max(1.0, std::abs(z))) {
      root = z;
      return true;
    }
  }
  root = z;
  return true;  // slow linear convergence still lands on multiple zeros
}

}  // namespace detail

// Locates the zeros of f inside the domain, away from a thin boundary
// strip, and checks the total multiplicity against expected_total.  On a
// shortfall the strip is halved once before giving up.
inline std::vector<LocatedZero> locate_zeros(const BoundaryGrid& g, const Holo& f, const Holo& fp,
                                             int expected_total,
                                             ZeroSearchOptions opts = {}) {
  if (opts.margin <= 0.0) opts.margin = 2.0 * g.max_spacing;
  if (opts.polish_box <= 0.0) opts.polish_box = 1e-5 * g.diameter;

  for (int attempt = 0; attempt < 2; ++attempt) {
    const double margin = opts.margin / (attempt + 1);

    // Square cover of the outer curve's bounding box.
    double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
    for (const cplx& p : g.dense[g.outer()]) {
      xlo = std::min(xlo, p.real());
      xhi = std::max(xhi, p.real());
      ylo = std::min(ylo, p.imag());
      yhi = std::max(yhi, p.imag());
    }
    detail::Box top;
    top.center = cplx(0.5 * (xlo + xhi), 0.5 * (ylo + yhi));
    top.half = 0.502 * std::max(xhi - xlo, yhi - ylo);

    std::vector<detail::Box> stack{top};
    std::vector<cplx> candidates;
    int visited = 0;

    while (!stack.empty()) {
      if (++visited > opts.max_boxes) throw NumericalError("zero search exhausted its box budget");
      const detail::Box b = stack.back();
      stack.pop_back();

      bool inside = false;
      try {
        inside = g.contains(b.center) && g.min_boundary_distance(b.center) > b.half_diag();
      } catch (const ConfigError&) {
        inside = false;  // center indistinguishable from the boundary
      }

      auto subdivide = [&] {
        const double h = 0.5 * b.half;
        for (int sx = -1; sx <= 1; sx += 2)
          for (int sy = -1; sy <= 1; sy += 2)
            stack.push_back({b.center + cplx(sx * h, sy * h), h});
      };

      if (!inside) {
        // May straddle the boundary; refine until the strip width is reached.
        if (2.0 * b.half_diag() >= margin) subdivide();
        continue;
      }

      const int count = detail::box_count(f, fp, b);
      if (count == 0) continue;
      if (count < 0) {
        if (2.0 * b.half_diag() >= margin)
          subdivide();
        else
          throw NumericalError("winding count never settled on an integer");
        continue;
      }
      if (2.0 * b.half_diag() > opts.polish_box) {
        subdivide();
        continue;
      }
      cplx root;
      if (detail::newton_polish(f, fp, b.center, b.half_diag(), root)) {
        candidates.push_back(root);
      } else if (b.half > 1e-10 * g.diameter) {
        subdivide();
      } else {
        candidates.push_back(b.center);
      }
    }

    // Deduplicate, then measure each root's multiplicity on its own tiny
    // contour so overlap from inflated boxes cannot double count.
    std::vector<cplx> reps;
    for (const cplx& c : candidates) {
      bool fresh = true;
      for (const cplx& r : reps)
        if (std::abs(c - r) < 1e-6 * g.diameter) fresh = false;
      if (fresh) reps.push_back(c);
    }

    std::vector<LocatedZero> zeros;
    int total = 0;
    for (const cplx& r : reps) {
      detail::Box tiny{r, 5e-8 * g.diameter};
      const int mult = detail::box_count(f, fp, tiny);
      if (mult > 0) {
        zeros.push_back({r, mult});
        total += mult;
      }
    }

    if (total == expected_total) return zeros;
    if (attempt == 1)
      throw NumericalError("zero search found a different total multiplicity than expected");
  }
  return {};  // unreachable
}

}  // namespace kernmap
