#pragma once

// The Green's function and its factorization through the kernel functions.
// green_direct solves a Dirichlet problem; green_z assembles the gradient
// from the principal term X = pi S L / S(w,w) and the harmonic-measure
// basis u_j.  The relative signs of the printed formulas depend on kernel
// conventions upstream, so two sign flags are calibrated once per domain
// against finite differences of green_direct and then frozen.

#include <cmath>
#include <optional>
#include <vector>

#include "kernmap/cauchy.hpp"
#include "kernmap/geometry.hpp"
#include "kernmap/harmonic.hpp"
#include "kernmap/path.hpp"
#include "kernmap/szego.hpp"
#include "kernmap/types.hpp"
#include "kernmap/zerofind.hpp"

namespace kernmap {

struct SignFlags {
  int eps1 = -1;         // principal term sign in the gradient identity
  int eps2 = -1;         // harmonic-measure correction sign
  int eps_poisson = -1;  // sign making the Poisson kernel positive
};

// Well separated interior points, at least min_bdist from the boundary,
// chosen greedily from a lattice to be spread out.  Deterministic.
inline std::vector<cplx> interior_probes(const BoundaryGrid& g, int count, double min_bdist) {
  double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
  for (const cplx& p : g.dense[g.outer()]) {
    xlo = std::min(xlo, p.real());
    xhi = std::max(xhi, p.real());
    ylo = std::min(ylo, p.imag());
    yhi = std::max(yhi, p.imag());
  }
  std::vector<cplx> pool;
  const int nx = 48;
  for (int ix = 1; ix < nx; ++ix) {
    for (int iy = 1; iy < nx; ++iy) {
      const cplx p(xlo + (xhi - xlo) * ix / nx, ylo + (yhi - ylo) * iy / nx);
      if (g.min_boundary_distance(p) < min_bdist) continue;
      if (!g.contains(p)) continue;
      pool.push_back(p);
    }
  }
  if (static_cast<int>(pool.size()) < count)
    throw NumericalError("domain too thin to place the requested interior probes");

  std::vector<cplx> picked{pool.front()};
  while (static_cast<int>(picked.size()) < count) {
    double best_d = -1.0;
    cplx best = pool.front();
    for (const cplx& p : pool) {
      double d = 1e300;
      for (const cplx& q : picked) d = std::min(d, std::abs(p - q));
      if (d > best_d) {
        best_d = d;
        best = p;
      }
    }
    picked.push_back(best);
  }
  return picked;
}

class GreenAssembly {
 public:
  GreenAssembly(const BoundaryGrid& g, const DirichletSolver& dirichlet,
                const HarmonicFrame& frame, const SzegoSolver& szego, cplx w, SignFlags flags)
      : g_(&g),
        frame_(&frame),
        flags_(flags),
        w_(w),
        ks_(szego.solve(w)),
        field_(g, ks_),
        f_(g, ks_),
        gsol_(dirichlet.solve(log_data(g, w))),
        lam_(lambda_values(g, ks_)) {
    om_.resize(frame.holes());
    for (int j = 0; j < frame.holes(); ++j) om_[j] = frame.omega(j, w);
  }

  const BoundaryGrid& grid() const { return *g_; }
  cplx source() const { return w_; }
  const KernelSet& kernels() const { return ks_; }
  const KernelField& kernel_field() const { return field_; }
  const AhlforsEvaluator& map() const { return f_; }
  SignFlags flags() const { return flags_; }
  const std::vector<double>& lambda() const { return lam_; }
  double omega_at_source(int j) const { return om_[j]; }

  // Principal term X(z,w) = pi S(z,w) L(z,w) / S(w,w).
  cplx X(cplx z) const { return pi * field_.szego(z) * field_.garabedian(z) / ks_.S_ww; }

  cplx X_boundary(int i) const { return pi * ks_.S[i] * ks_.L[i] / ks_.S_ww; }

  // Gradient 2 dG/dz assembled from the kernel identity.
  cplx green_z(cplx z) const {
    cplx acc = static_cast<double>(flags_.eps1) * X(z);
    for (int j = 0; j < frame_->holes(); ++j)
      acc += static_cast<double>(flags_.eps2) * iu * pi * (om_[j] - lam_[j]) *
             frame_->u_field(j, z);
    return acc;
  }

  cplx green_z_boundary(int i) const {
    cplx acc = static_cast<double>(flags_.eps1) * X_boundary(i);
    for (int j = 0; j < frame_->holes(); ++j)
      acc += static_cast<double>(flags_.eps2) * iu * pi * (om_[j] - lam_[j]) *
             frame_->u_boundary(j)[i];
    return acc;
  }

  // Direct Green's function: log singularity plus a Dirichlet correction.
  double green_direct(cplx z) const {
    if (std::abs(z - w_) < 1e-10) throw NumericalError("Green evaluation at the singularity");
    return -std::log(std::abs(z - w_)) + gsol_.value(z);
  }

  // Base point of all integration paths: the outer-boundary point where
  // the Ahlfors map for this source takes the value 1.
  cplx base_point() const {
    if (!z0_) z0_ = ahlfors_boundary_root(*g_, f_, g_->outer());
    return *z0_;
  }

  const std::vector<LocatedZero>& branch_points() const {
    if (!branch_) branch_ = branch_locus(*g_, f_);
    return *branch_;
  }

  double exclusion_radius() const { return std::max(1e-3 * g_->diameter, 3.0 * g_->max_spacing); }

  // Routes from -> to inside the domain, detouring around the holes, the
  // source, and the branch points.  Optional via points select a homotopy
  // class.  Anchor points inside a branch disc shrink it; those discs are
  // fully interior, so the tightened detour stays usable.  Endpoints
  // hugging a hole rim are reached through the router's radial approach,
  // and the source disc is never relaxed, so evaluation too close to w
  // fails as it should.
  PathSpec route(cplx from, cplx to, const std::vector<cplx>& vias = {}) const {
    std::vector<ExclusionDisc> obstacles;
    const double r = exclusion_radius();
    for (int k = 0; k + 1 < g_->n; ++k) {
      cplx c = 0.0;
      double extent = 0.0;
      for (const cplx& p : g_->dense[k]) c += p;
      c /= static_cast<double>(g_->dense[k].size());
      for (const cplx& p : g_->dense[k]) extent = std::max(extent, std::abs(p - c));
      obstacles.push_back({c, extent + g_->max_spacing});
    }
    std::vector<cplx> anchors{from, to};
    anchors.insert(anchors.end(), vias.begin(), vias.end());
    for (const auto& b : branch_points()) {
      ExclusionDisc d{b.point, r};
      for (const cplx& a : anchors)
        if (std::abs(a - d.center) < d.radius)
          d.radius = std::abs(a - d.center) * (1.0 - 1e-6);
      obstacles.push_back(d);
    }
    obstacles.push_back({w_, r});

    PathSpec path;
    cplx at = from;
    for (const cplx& v : vias) {
      PathSpec leg = resolve_path(*g_, at, v, obstacles);
      path.pieces.insert(path.pieces.end(), leg.pieces.begin(), leg.pieces.end());
      at = v;
    }
    PathSpec leg = resolve_path(*g_, at, to, obstacles);
    path.pieces.insert(path.pieces.end(), leg.pieces.begin(), leg.pieces.end());
    return path;
  }

  // G recovered as twice the real part of a path integral of the gradient
  // from the base point, where G vanishes.
  double green_by_path(cplx z, const std::vector<cplx>& vias = {}) const {
    const PathSpec path = route(base_point(), z, vias);
    return 2.0 *
           integrate_along_path(path, [&](cplx zz) { return green_z(zz); }, 1e-10).real();
  }

  struct Decomposition {
    double alpha_re = 0.0;   // 2 Re of the path integral of the principal term
    double correction = 0.0; // harmonic-measure part
    double total = 0.0;
  };

  Decomposition decompose(cplx z, const std::vector<cplx>& vias = {}) const {
    const PathSpec path = route(base_point(), z, vias);
    Decomposition d;
    d.alpha_re =
        2.0 *
        integrate_along_path(
            path, [&](cplx zz) { return static_cast<double>(flags_.eps1) * X(zz); }, 1e-10)
            .real();
    for (int j = 0; j < frame_->holes(); ++j)
      d.correction += static_cast<double>(flags_.eps2) * 2.0 * pi * (om_[j] - lam_[j]) *
                      frame_->mu_field(j, z);
    d.total = d.alpha_re + d.correction;
    return d;
  }

  // Crosscut coefficient v_k: the principal-term path integral to the
  // point of gamma_k where the map takes the value 1.
  double crosscut_v(int k) const {
    const cplx zk = ahlfors_boundary_root(*g_, f_, k);
    const PathSpec path = route(base_point(), zk);
    return -integrate_along_path(
                path, [&](cplx zz) { return static_cast<double>(flags_.eps1) * X(zz); }, 1e-10)
                .real();
  }

  // Independent value for the same coefficient through sigma.
  cplx crosscut_v_reference(int k) const {
    cplx acc = 0.0;
    for (int j = 0; j < frame_->holes(); ++j)
      acc += static_cast<double>(flags_.eps2) * iu * pi * (om_[j] - lam_[j]) *
             frame_->sigma()(j, k);
    return acc;
  }

  // lambda_k recovered from the contour integral of the principal term
  // around gamma_k, the curve taken counterclockwise.
  cplx lambda_by_contour(int k) const {
    cplx acc = 0.0;
    for (int i = 0; i < g_->m; ++i) {
      const int idx = g_->flat(k, i);
      acc += X_boundary(idx) * g_->wdz[idx];
    }
    // Inner curves run clockwise in the grid orientation; flip to CCW.
    acc = -acc;
    return static_cast<double>(flags_.eps1) * acc / (iu * pi);
  }

  // Contour integral of the gradient around gamma_k taken counterclockwise.
  cplx contour_green_z(int k) const {
    cplx acc = 0.0;
    for (int i = 0; i < g_->m; ++i) {
      const int idx = g_->flat(k, i);
      acc += green_z_boundary(idx) * g_->wdz[idx];
    }
    return -acc;
  }

  // Poisson kernel density at boundary node i.
  double poisson(int i) const {
    return (static_cast<double>(flags_.eps_poisson) * (-iu / pi) * green_z_boundary(i) *
            g_->T[i])
        .real();
  }

  cplx poisson_complex(int i) const {
    return static_cast<double>(flags_.eps_poisson) * (-iu / pi) * green_z_boundary(i) * g_->T[i];
  }

 private:
  static std::vector<double> log_data(const BoundaryGrid& g, cplx w) {
    std::vector<double> data(g.total());
    for (int i = 0; i < g.total(); ++i) data[i] = std::log(std::abs(g.z[i] - w));
    return data;
  }

  const BoundaryGrid* g_;
  const HarmonicFrame* frame_;
  SignFlags flags_;
  cplx w_;
  KernelSet ks_;
  KernelField field_;
  AhlforsEvaluator f_;
  DirichletSolution gsol_;
  std::vector<double> lam_;
  std::vector<double> om_;
  mutable std::optional<cplx> z0_;
  mutable std::optional<std::vector<LocatedZero>> branch_;
};

// Determines the sign flags for a domain by comparing the assembled
// gradient against centered finite differences of the direct Green's
// function, then fixing the Poisson sign by positivity.  The winning
// combination must beat every other by a wide factor.
inline SignFlags calibrate_signs(const BoundaryGrid& g, const DirichletSolver& dirichlet,
                                 const HarmonicFrame& frame, const SzegoSolver& szego) {
  const std::vector<cplx> pts = interior_probes(g, 4, 5.0 * g.max_spacing);
  const cplx w = pts[0];
  std::vector<cplx> probes(pts.begin() + 1, pts.end());

  const KernelSet ks = szego.solve(w);
  const KernelField field(g, ks);
  const std::vector<double> lam = lambda_values(g, ks);
  std::vector<double> data(g.total());
  for (int i = 0; i < g.total(); ++i) data[i] = std::log(std::abs(g.z[i] - w));
  const DirichletSolution gsol = dirichlet.solve(data);
  auto direct = [&](cplx z) { return -std::log(std::abs(z - w)) + gsol.value(z); };

  const double h = 1e-5 * g.diameter;
  double best = 1e300, second = 1e300;
  int best1 = 0, best2 = 0;
  for (int e1 : {-1, 1}) {
    for (int e2 : {-1, 1}) {
      double worst = 0.0;
      for (const cplx& z : probes) {
        const double gx = (direct(z + h) - direct(z - h)) / (2.0 * h);
        const double gy = (direct(z + iu * h) - direct(z - iu * h)) / (2.0 * h);
        const cplx fd = 0.5 * cplx(gx, -gy);
        cplx assembled = static_cast<double>(e1) * pi * field.szego(z) * field.garabedian(z) /
                         ks.S_ww;
        for (int j = 0; j < frame.holes(); ++j)
          assembled += static_cast<double>(e2) * iu * pi * (frame.omega(j, w) - lam[j]) *
                       frame.u_field(j, z);
        worst = std::max(worst, std::abs(assembled - fd));
      }
      if (worst < best) {
        second = best;
        best = worst;
        best1 = e1;
        best2 = e2;
      } else {
        second = std::min(second, worst);
      }
    }
  }
  if (best > 1e-3)
    throw NumericalError("no sign combination reproduces the Green gradient");
  if (frame.holes() > 0 && second < 10.0 * best)
    throw NumericalError("sign calibration is ambiguous on this domain");

  SignFlags flags;
  flags.eps1 = best1;
  flags.eps2 = frame.holes() > 0 ? best2 : -1;

  // Poisson positivity fixes the last flag.
  int positive = 0, negative = 0;
  for (int i = 0; i < g.total(); i += std::max(1, g.total() / 16)) {
    cplx gz = static_cast<double>(flags.eps1) * pi * ks.S[i] * ks.L[i] / ks.S_ww;
    for (int j = 0; j < frame.holes(); ++j)
      gz += static_cast<double>(flags.eps2) * iu * pi * (frame.omega(j, w) - lam[j]) *
            frame.u_boundary(j)[i];
    const double p = ((-iu / pi) * gz * g.T[i]).real();
    if (p > 0.0)
      ++positive;
    else
      ++negative;
  }
  if (positive > 0 && negative > 0)
    throw NumericalError("Poisson kernel changes sign during calibration");
  flags.eps_poisson = positive > 0 ? 1 : -1;
  return flags;
}

}  // namespace kernmap
