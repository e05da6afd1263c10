#pragma once

// Szego and Garabedian kernels from a second-kind boundary integral
// equation, plus the Ahlfors map built from their ratio, its boundary
// roots, the zeros of S(.,a), and the branch locus of the map.
//
// Normalization is anchored to the unit disc: S(z,w) = 1/(2 pi (1 - conj(w) z)),
// L(z,w) = 1/(2 pi (z - w)).  With that choice the boundary identity
// conj(S) = (1/i) L T holds exactly and f = S/L is the disc Mobius map.

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kernmap/cauchy.hpp"
#include "kernmap/geometry.hpp"
#include "kernmap/spectral.hpp"
#include "kernmap/types.hpp"
#include "kernmap/zerofind.hpp"

namespace kernmap {

struct KernelSet {
  cplx w;                  // source point
  std::vector<cplx> S;     // Szego kernel samples S(z_i, w)
  std::vector<cplx> L;     // Garabedian kernel samples L(z_i, w)
  double S_ww = 0.0;       // S(w,w) from the reproducing sum, positive
};

namespace detail {

// Spectral derivative d/dz of boundary samples, one curve at a time.
inline std::vector<cplx> boundary_dz(const BoundaryGrid& g, const std::vector<cplx>& vals) {
  std::vector<cplx> out(g.total());
  for (int c = 0; c < g.n; ++c) {
    std::vector<cplx> seg(vals.begin() + g.flat(c, 0), vals.begin() + g.flat(c, 0) + g.m);
    const std::vector<cplx> dseg = spectral_derivative(seg);
    for (int i = 0; i < g.m; ++i) out[g.flat(c, i)] = dseg[i] / g.dz[g.flat(c, i)];
  }
  return out;
}

}  // namespace detail

class SzegoSolver {
 public:
  explicit SzegoSolver(const BoundaryGrid& g) : g_(&g) {
    const int N = g.total();
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Identity(N, N);
    const cplx c0 = 1.0 / (2.0 * pi * iu);
    for (int i = 0; i < N; ++i) {
      for (int j = 0; j < N; ++j) {
        if (i == j) continue;  // the kernel is smooth with zero diagonal
        const cplx a = c0 * (g.T[j] / (g.z[j] - g.z[i]) + std::conj(g.T[i] / (g.z[i] - g.z[j])));
        M(i, j) -= a * g.ds[j];
      }
    }
    lu_.compute(M);
    const auto diag = lu_.matrixLU().diagonal();
    double lo = 1e300, hi = 0.0;
    for (int i = 0; i < N; ++i) {
      lo = std::min(lo, std::abs(diag(i)));
      hi = std::max(hi, std::abs(diag(i)));
    }
    if (lo < 1e-13 * hi)
      throw NumericalError("boundary system numerically singular, pivot ratio " +
                           std::to_string(lo / hi));
    curve_spacing_.assign(g.n, 0.0);
    for (int c = 0; c < g.n; ++c)
      for (int i = 0; i < g.m; ++i)
        curve_spacing_[c] = std::max(curve_spacing_[c], g.ds[g.flat(c, i)]);
  }

  const BoundaryGrid& grid() const { return *g_; }

  KernelSet solve(cplx w) const {
    const BoundaryGrid& g = *g_;
    if (!g.contains(w)) throw ConfigError("point not in domain");
    int nearest = 0;
    double dmin = 1e300;
    for (int c = 0; c < g.n; ++c) {
      const double d = g.curve_distance(c, w);
      if (d < dmin) {
        dmin = d;
        nearest = c;
      }
    }
    if (dmin < curve_spacing_[nearest])
      throw NumericalError("source point closer to the boundary than the grid resolves");

    const int N = g.total();
    Eigen::VectorXcd rhs(N);
    const cplx c0 = 1.0 / (2.0 * pi * iu);
    for (int i = 0; i < N; ++i) rhs(i) = std::conj(c0 * g.T[i] / (g.z[i] - w));
    const Eigen::VectorXcd x = lu_.solve(rhs);

    KernelSet ks;
    ks.w = w;
    ks.S.resize(N);
    ks.L.resize(N);
    double sww = 0.0;
    for (int i = 0; i < N; ++i) {
      ks.S[i] = x(i);
      ks.L[i] = iu * std::conj(ks.S[i]) * std::conj(g.T[i]);
      sww += std::norm(ks.S[i]) * g.ds[i];
    }
    if (!(sww > 0.0)) throw NumericalError("reproducing sum for S(w,w) is not positive");
    ks.S_ww = sww;
    return ks;
  }

 private:
  const BoundaryGrid* g_;
  std::vector<double> curve_spacing_;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu_;
};

// Interior evaluation of both kernels.  The Garabedian kernel has a simple
// pole at w with residue 1/(2 pi); the pole is split off so the remainder
// can go through the Cauchy integral.
class KernelField {
 public:
  KernelField(const BoundaryGrid& g, KernelSet ks)
      : g_(&g),
        ks_(std::move(ks)),
        s_ev_(g, ks_.S),
        lreg_ev_(g, subtract_pole(g, ks_)) {}

  const KernelSet& set() const { return ks_; }
  cplx source() const { return ks_.w; }

  cplx szego(cplx z) const { return s_ev_.value(z); }
  cplx szego_deriv(cplx z) const { return s_ev_.deriv(z); }

  cplx garabedian(cplx z) const {
    return lreg_ev_.value(z) + 1.0 / (2.0 * pi * (z - ks_.w));
  }

 private:
  static std::vector<cplx> subtract_pole(const BoundaryGrid& g, const KernelSet& ks) {
    std::vector<cplx> reg(g.total());
    for (int i = 0; i < g.total(); ++i)
      reg[i] = ks.L[i] - 1.0 / (2.0 * pi * (g.z[i] - ks.w));
    return reg;
  }

  const BoundaryGrid* g_;
  KernelSet ks_;
  CauchyEvaluator s_ev_;
  CauchyEvaluator lreg_ev_;
};

// The Ahlfors map f = S(.,a)/L(.,a): an n-to-one proper map onto the unit
// disc with f(a) = 0 and f'(a) = 2 pi S(a,a) > 0.  The ratio normalizes
// itself, so no rotation factor is needed.
class AhlforsEvaluator {
 public:
  AhlforsEvaluator(const BoundaryGrid& g, const KernelSet& ks)
      : g_(&g), a_(ks.w), f_ev_(g, ratio(ks)), fp_ev_(g, detail::boundary_dz(g, f_ev_.samples())) {
    fpp_ = detail::boundary_dz(g, fp_ev_.samples());
  }

  cplx source() const { return a_; }
  const std::vector<cplx>& boundary() const { return f_ev_.samples(); }
  const std::vector<cplx>& boundary_deriv() const { return fp_ev_.samples(); }
  const std::vector<cplx>& boundary_deriv2() const { return fpp_; }

  cplx value(cplx z) const { return f_ev_.value(z); }
  cplx deriv(cplx z) const { return fp_ev_.value(z); }
  cplx deriv2(cplx z) const { return fp_ev_.deriv(z); }

  // Total winding of f over the boundary; equals the connectivity.
  int degree() const { return boundary_zero_count(*g_, boundary(), boundary_deriv()); }

 private:
  static std::vector<cplx> ratio(const KernelSet& ks) {
    std::vector<cplx> f(ks.S.size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = ks.S[i] / ks.L[i];
    return f;
  }

  const BoundaryGrid* g_;
  cplx a_;
  CauchyEvaluator f_ev_;
  CauchyEvaluator fp_ev_;
  std::vector<cplx> fpp_;
};

// The point on curve j where the Ahlfors map takes the value 1.  The map
// carries each boundary curve once around the unit circle, so the lifted
// argument is monotone and crosses each level exactly once per turn.
inline cplx ahlfors_boundary_root(const BoundaryGrid& g, const AhlforsEvaluator& f, int curve) {
  const int m = g.m;
  std::vector<cplx> seg(f.boundary().begin() + g.flat(curve, 0),
                        f.boundary().begin() + g.flat(curve, 0) + m);
  TrigInterp interp(seg);

  // Unwrapped phase at the nodes, extended one full period.
  std::vector<double> phase(m + 1);
  phase[0] = std::arg(seg[0]);
  for (int i = 1; i <= m; ++i) {
    const cplx fa = seg[(i - 1) % m];
    const cplx fb = seg[i % m];
    phase[i] = phase[i - 1] + std::arg(fb / fa);
  }
  if (std::abs(phase[m] - phase[0] - 2.0 * pi) > 1e-6)
    throw NumericalError("boundary winding of the conformal map is not one full turn");

  // First multiple of 2 pi at or above the starting phase.
  const double target = 2.0 * pi * std::ceil(phase[0] / (2.0 * pi) - 1e-12);
  int bracket = -1;
  for (int i = 0; i < m; ++i) {
    if (phase[i] - 1e-12 <= target && target <= phase[i + 1] + 1e-12) {
      bracket = i;
      break;
    }
  }
  if (bracket < 0) throw NumericalError("no phase bracket for the boundary root");

  // Shrink the bracket by repeated 16-way subdivision with cumulative
  // phase tracking; each sub-step moves the phase far less than pi, so
  // the lifted argument never wraps.
  const double h = 2.0 * pi / m;
  double lo = bracket * h, hi = (bracket + 1) * h;
  double plo = phase[bracket];
  cplx flo = interp(lo);
  for (int round = 0; round < 16 && hi - lo > 1e-15; ++round) {
    const double step = (hi - lo) / 16.0;
    double p = plo;
    cplx fprev = flo;
    for (int s = 1; s <= 16; ++s) {
      const double tt = lo + s * step;
      const cplx ft = interp(tt);
      const double pn = p + std::arg(ft / fprev);
      if (pn >= target || s == 16) {
        hi = tt;
        break;
      }
      lo = tt;
      plo = pn;
      flo = ft;
      p = pn;
      fprev = ft;
    }
  }
  // The bisection pins the phase; the modulus of the interpolant between
  // nodes carries the trigonometric interpolation error, so it only gets a
  // coarse sanity gate.
  const double t_root = 0.5 * (lo + hi);
  const cplx v = interp(t_root);
  if (std::abs(std::arg(v)) > 1e-10 || std::abs(v - 1.0) > 1e-6)
    throw NumericalError("boundary root of the conformal map did not converge");
  return g.curve_point(curve, t_root);
}

// Zeros of S(.,a) in the domain: exactly n-1 of them, distinct and simple.
inline std::vector<cplx> szego_zeros(const BoundaryGrid& g, const KernelField& field) {
  const int expected = g.n - 1;
  if (expected == 0) return {};

  const std::vector<cplx> sp = detail::boundary_dz(g, field.set().S);
  const int counted = boundary_zero_count(g, field.set().S, sp);
  if (counted != expected)
    throw NumericalError("Szego kernel zero count disagrees with the connectivity");

  const auto zeros = locate_zeros(
      g, [&](cplx z) { return field.szego(z); }, [&](cplx z) { return field.szego_deriv(z); },
      expected);
  std::vector<cplx> pts;
  for (const auto& z : zeros) {
    if (z.multiplicity != 1)
      throw NumericalError("Szego kernel zero is not simple; try a different source point");
    pts.push_back(z.point);
  }
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (std::abs(pts[i] - pts[j]) < 1e-6 * g.diameter)
        throw NumericalError("Szego kernel zeros collide; try a different source point");
  return pts;
}

// Zeros of f' in the domain, with multiplicity; the total is 2n-2.
inline std::vector<LocatedZero> branch_locus(const BoundaryGrid& g, const AhlforsEvaluator& f) {
  const int expected = 2 * g.n - 2;
  if (expected == 0) {
    if (boundary_zero_count(g, f.boundary_deriv(), f.boundary_deriv2()) != 0)
      throw NumericalError("map derivative has unexpected zeros");
    return {};
  }
  const int counted = boundary_zero_count(g, f.boundary_deriv(), f.boundary_deriv2());
  if (counted != expected)
    throw NumericalError("branch point count disagrees with the connectivity");
  return locate_zeros(
      g, [&](cplx z) { return f.deriv(z); }, [&](cplx z) { return f.deriv2(z); }, expected);
}

}  // namespace kernmap
