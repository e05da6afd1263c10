#pragma once

// Multiply connected domains bounded by analytic Jordan curves and their
// boundary discretization.  Orientation convention throughout: the domain
// lies to the left of every curve, so the outer curve runs counterclockwise
// and inner curves run clockwise; the outward normal is -i*T.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "kernmap/curve.hpp"
#include "kernmap/types.hpp"

namespace kernmap {

// Curves listed with the single outer curve last.
struct DomainSpec {
  std::vector<CurveSpec> curves;

  int size() const { return static_cast<int>(curves.size()); }

  void validate_roles() const {
    if (curves.empty()) throw ConfigError("domain needs at least one curve");
    int outer_count = 0;
    for (const auto& c : curves)
      if (c.role == CurveRole::outer) ++outer_count;
    if (outer_count != 1) throw ConfigError("domain needs exactly one outer curve");
    if (curves.back().role != CurveRole::outer)
      throw ConfigError("the outer curve must be listed last");
  }
};

namespace detail {

inline double winding_number(const std::vector<cplx>& poly, cplx p) {
  double acc = 0.0;
  const std::size_t n = poly.size();
  for (std::size_t k = 0; k < n; ++k) {
    const cplx a = poly[k] - p;
    const cplx b = poly[(k + 1) % n] - p;
    acc += std::arg(b / a);
  }
  return acc / (2.0 * pi);
}

inline double signed_area(const std::vector<cplx>& poly) {
  double acc = 0.0;
  const std::size_t n = poly.size();
  for (std::size_t k = 0; k < n; ++k) {
    const cplx a = poly[k];
    const cplx b = poly[(k + 1) % n];
    acc += a.real() * b.imag() - b.real() * a.imag();
  }
  return 0.5 * acc;
}

inline bool segments_cross(cplx p1, cplx p2, cplx q1, cplx q2) {
  auto orient = [](cplx a, cplx b, cplx c) {
    const double v = (b.real() - a.real()) * (c.imag() - a.imag()) -
                     (b.imag() - a.imag()) * (c.real() - a.real());
    return (v > 0.0) - (v < 0.0);
  };
  const int o1 = orient(p1, p2, q1);
  const int o2 = orient(p1, p2, q2);
  const int o3 = orient(q1, q2, p1);
  const int o4 = orient(q1, q2, p2);
  return o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0;
}

}  // namespace detail

struct BoundaryGrid {
  int n = 0;  // curve count; outer curve has index n-1
  int m = 0;  // nodes per curve

  std::vector<double> t;      // oriented parameter per node
  std::vector<cplx> z;        // nodes, curve-major flattening
  std::vector<cplx> dz;       // oriented velocity z'(t)
  std::vector<cplx> d2z;      // oriented acceleration
  std::vector<cplx> T;        // unit tangent dz/|dz|
  std::vector<double> ds;     // |dz| * 2 pi / m   (trapezoid weight included)
  std::vector<cplx> wdz;      // T * ds = dz * 2 pi / m
  std::vector<double> kappa;  // signed curvature of the oriented curve
  std::vector<int> dir;       // +1 keeps the stored parametrization, -1 reverses

  std::vector<std::vector<cplx>> dense;  // fine polylines for point queries
  double diameter = 0.0;
  double max_spacing = 0.0;

  int flat(int curve, int i) const { return curve * m + i; }
  int curve_of(int idx) const { return idx / m; }
  int outer() const { return n - 1; }
  int total() const { return n * m; }

  DomainSpec spec;

  double oriented_param(int curve, double t_grid) const {
    return dir[curve] * t_grid;
  }

  cplx curve_point(int curve, double t_grid) const {
    return spec.curves[curve].point(dir[curve] * t_grid);
  }

  cplx curve_velocity(int curve, double t_grid) const {
    return static_cast<double>(dir[curve]) * spec.curves[curve].velocity(dir[curve] * t_grid);
  }

  double curve_distance(int curve, cplx p) const;
  double min_boundary_distance(cplx p) const;
  bool contains(cplx p) const;
};

inline double BoundaryGrid::curve_distance(int curve, cplx p) const {
  const auto& poly = dense[curve];
  const int nd = static_cast<int>(poly.size());
  int best = 0;
  double best_d = std::numeric_limits<double>::max();
  for (int k = 0; k < nd; ++k) {
    const double d = std::abs(poly[k] - p);
    if (d < best_d) {
      best_d = d;
      best = k;
    }
  }
  // Golden-section refinement of |z(t) - p| around the best dense sample.
  const double h = 2.0 * pi / nd;
  double a = (best - 1) * h, b = (best + 1) * h;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  auto g = [&](double tt) { return std::norm(curve_point(curve, tt) - p); };
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double g1 = g(x1), g2 = g(x2);
  for (int it = 0; it < 90; ++it) {
    if (g1 < g2) {
      b = x2;
      x2 = x1;
      g2 = g1;
      x1 = b - gr * (b - a);
      g1 = g(x1);
    } else {
      a = x1;
      x1 = x2;
      g1 = g2;
      x2 = a + gr * (b - a);
      g2 = g(x2);
    }
  }
  return std::sqrt(std::min(g1, g2));
}

inline double BoundaryGrid::min_boundary_distance(cplx p) const {
  double best = std::numeric_limits<double>::max();
  for (int c = 0; c < n; ++c) best = std::min(best, curve_distance(c, p));
  return best;
}

inline bool BoundaryGrid::contains(cplx p) const {
  if (min_boundary_distance(p) < 1e-12 * diameter)
    throw ConfigError("point query too close to the boundary to classify");
  double w = 0.0;
  for (int c = 0; c < n; ++c) w += detail::winding_number(dense[c], p);
  return std::lround(w) == 1;
}

// Builds the boundary grid with m nodes per curve, normalizing orientations
// and validating the curve system (smooth, simple, correctly nested).
inline BoundaryGrid discretize(const DomainSpec& spec, int m) {
  spec.validate_roles();
  if (m < 32 || m % 2 != 0) throw ConfigError("nodes_per_curve must be even and at least 32");

  const int n = spec.size();
  BoundaryGrid g;
  g.spec = spec;
  g.n = n;
  g.m = m;
  g.dir.assign(n, 1);

  const int nd = std::max(1024, 8 * m);
  g.dense.resize(n);

  // Orientation from the signed area of a fine polyline.
  for (int c = 0; c < n; ++c) {
    std::vector<cplx> poly(nd);
    for (int k = 0; k < nd; ++k) poly[k] = spec.curves[c].point(2.0 * pi * k / nd);
    const double area = detail::signed_area(poly);
    if (std::abs(area) < 1e-14) throw ConfigError("degenerate curve encloses no area");
    const bool ccw = area > 0.0;
    const bool want_ccw = spec.curves[c].role == CurveRole::outer;
    g.dir[c] = (ccw == want_ccw) ? 1 : -1;
    if (g.dir[c] < 0) std::reverse(poly.begin() + 1, poly.end());
    g.dense[c] = std::move(poly);
  }

  // Smoothness: the velocity must not vanish anywhere.
  for (int c = 0; c < n; ++c) {
    double vmin = std::numeric_limits<double>::max(), vmax = 0.0;
    for (int k = 0; k < nd; ++k) {
      const double v = std::abs(spec.curves[c].velocity(2.0 * pi * k / nd));
      vmin = std::min(vmin, v);
      vmax = std::max(vmax, v);
    }
    if (vmin < 1e-10 * vmax) throw ConfigError("curve parametrization has a stationary point");
  }

  // Simplicity: no proper self-crossing of a moderately fine polyline.
  for (int c = 0; c < n; ++c) {
    const int ns = 1024;
    std::vector<cplx> poly(ns);
    for (int k = 0; k < ns; ++k) poly[k] = spec.curves[c].point(2.0 * pi * k / ns);
    for (int i = 0; i < ns; ++i) {
      for (int j = i + 2; j < ns; ++j) {
        if (i == 0 && j == ns - 1) continue;
        if (detail::segments_cross(poly[i], poly[(i + 1) % ns], poly[j], poly[(j + 1) % ns]))
          throw ConfigError("curve intersects itself");
      }
    }
  }

  double dia = 0.0;
  {
    double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
    for (const cplx& p : g.dense[n - 1]) {
      xlo = std::min(xlo, p.real());
      xhi = std::max(xhi, p.real());
      ylo = std::min(ylo, p.imag());
      yhi = std::max(yhi, p.imag());
    }
    dia = std::hypot(xhi - xlo, yhi - ylo);
  }
  g.diameter = dia;

  // Separation and nesting of distinct curves.
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      double dmin = std::numeric_limits<double>::max();
      for (std::size_t i = 0; i < g.dense[a].size(); i += 4)
        for (std::size_t j = 0; j < g.dense[b].size(); j += 4)
          dmin = std::min(dmin, std::abs(g.dense[a][i] - g.dense[b][j]));
      if (dmin < 1e-9 * dia) throw ConfigError("two boundary curves touch or intersect");
    }
  }
  for (int c = 0; c + 1 < n; ++c) {
    for (std::size_t k = 0; k < g.dense[c].size(); k += 16) {
      if (std::lround(detail::winding_number(g.dense[n - 1], g.dense[c][k])) != 1)
        throw ConfigError("inner curve not contained in the outer curve");
      for (int other = 0; other + 1 < n; ++other) {
        if (other == c) continue;
        if (std::lround(detail::winding_number(g.dense[other], g.dense[c][k])) != 0)
          throw ConfigError("inner curves are nested");
      }
    }
  }

  const int total = n * m;
  g.t.resize(total);
  g.z.resize(total);
  g.dz.resize(total);
  g.d2z.resize(total);
  g.T.resize(total);
  g.ds.resize(total);
  g.wdz.resize(total);
  g.kappa.resize(total);

  const double step = 2.0 * pi / m;
  for (int c = 0; c < n; ++c) {
    for (int i = 0; i < m; ++i) {
      const int idx = g.flat(c, i);
      const double tt = step * i;
      const double s = g.dir[c] * tt;
      const cplx v = static_cast<double>(g.dir[c]) * spec.curves[c].velocity(s);
      const cplx acc = spec.curves[c].acceleration(s);
      g.t[idx] = tt;
      g.z[idx] = spec.curves[c].point(s);
      g.dz[idx] = v;
      g.d2z[idx] = acc;
      g.T[idx] = v / std::abs(v);
      g.ds[idx] = std::abs(v) * step;
      g.wdz[idx] = v * step;
      g.kappa[idx] = (std::conj(v) * acc).imag() / std::pow(std::abs(v), 3);
      g.max_spacing = std::max(g.max_spacing, g.ds[idx]);
    }
  }

  // Winding sanity on the discretization itself: +1 for the outer curve seen
  // from inside, -1 for each inner curve seen from a point it encloses.
  for (int c = 0; c < n; ++c) {
    std::vector<cplx> nodes(g.z.begin() + g.flat(c, 0), g.z.begin() + g.flat(c, 0) + m);
    cplx probe = 0.0;
    for (const cplx& p : nodes) probe += p;
    probe /= static_cast<double>(m);
    const long w = std::lround(detail::winding_number(nodes, probe));
    const long expect = (c == n - 1) ? 1 : -1;
    if (w != expect) throw ConfigError("curve orientation check failed");
  }

  return g;
}

}  // namespace kernmap
