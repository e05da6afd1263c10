#pragma once

// Two-point interpolation of the Szego and Garabedian kernels through the
// kernels rooted at the base point a and at the n-1 zeros of S(., a):
//
//   S(z,w) (1 - conj(f(w)) f(z)) = c_00 S(z,a) conj(S(w,a))
//                                + sum_{j,k>=1} c_jk S(z,a_j) conj(S(w,a_k))
//
// and the companion identity for L with conjugated coefficients.  The
// coefficients are fit in least squares over sampled (z, w) pairs and
// validated on held-out pairs.

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "kernmap/green.hpp"
#include "kernmap/szego.hpp"
#include "kernmap/types.hpp"

namespace kernmap {

struct InterpolationCoeffs {
  cplx base;                // a
  std::vector<cplx> zeros;  // a_1 .. a_{n-1}
  Eigen::MatrixXcd c;       // n by n; c(0,0) is c_00, row/column 0 otherwise zero
  double fit_residual = 0.0;
  double heldout_residual = 0.0;
};

namespace detail {

struct InterpSamples {
  std::vector<int> z_nodes;    // boundary sample indices
  std::vector<cplx> w_points;  // interior sample points
};

inline InterpSamples interp_samples(const BoundaryGrid& g) {
  InterpSamples s;
  const int stride = std::max(1, g.m / 24);
  for (int i = 0; i < g.total(); i += stride) s.z_nodes.push_back(i);
  s.w_points = interior_probes(g, 6, 5.0 * g.max_spacing);
  return s;
}

}  // namespace detail

// Fits the coefficients from boundary samples of S(., w) for interior w
// against the basis kernels at a and the zeros.  Half the sample pairs are
// held out of the fit and used only for the reported residual.
inline InterpolationCoeffs fit_interpolation_coeffs(const BoundaryGrid& g,
                                                    const SzegoSolver& solver,
                                                    const KernelSet& ks_a,
                                                    const AhlforsEvaluator& f,
                                                    const std::vector<cplx>& zeros) {
  const int n = static_cast<int>(zeros.size()) + 1;
  const int unknowns = 1 + (n - 1) * (n - 1);

  const KernelField field_a(g, ks_a);
  std::vector<KernelField> field_z;
  for (const cplx& aj : zeros) field_z.emplace_back(g, solver.solve(aj));

  const detail::InterpSamples samples = detail::interp_samples(g);
  const int rows_all = static_cast<int>(samples.z_nodes.size() * samples.w_points.size());
  if (rows_all < 3 * (n - 1) * (n - 1) + 3)
    throw NumericalError("too few sample pairs for the interpolation fit");

  // One row per (z_i, w_l) pair; rows alternate between fit and held-out.
  std::vector<Eigen::VectorXcd> fit_rows, held_rows;
  std::vector<cplx> fit_rhs, held_rhs;
  int parity = 0;
  for (const cplx& w : samples.w_points) {
    const KernelSet ks_w = solver.solve(w);
    const cplx fw_conj = std::conj(f.value(w));
    const cplx swa_conj = std::conj(field_a.szego(w));
    std::vector<cplx> swz_conj(n - 1);
    for (int k = 0; k + 1 < n; ++k) swz_conj[k] = std::conj(field_z[k].szego(w));

    for (const int i : samples.z_nodes) {
      Eigen::VectorXcd row(unknowns);
      row(0) = ks_a.S[i] * swa_conj;
      for (int j = 0; j + 1 < n; ++j)
        for (int k = 0; k + 1 < n; ++k)
          row(1 + j * (n - 1) + k) = field_z[j].set().S[i] * swz_conj[k];
      const cplx rhs = ks_w.S[i] * (1.0 - fw_conj * f.boundary()[i]);
      if (parity++ % 2 == 0) {
        fit_rows.push_back(row);
        fit_rhs.push_back(rhs);
      } else {
        held_rows.push_back(row);
        held_rhs.push_back(rhs);
      }
    }
  }

  Eigen::MatrixXcd A(fit_rows.size(), unknowns);
  Eigen::VectorXcd b(fit_rows.size());
  for (std::size_t r = 0; r < fit_rows.size(); ++r) {
    A.row(r) = fit_rows[r];
    b(r) = fit_rhs[r];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(A);
  if (qr.rank() < unknowns)
    throw NumericalError("interpolation fit is rank deficient; try a different base point");
  const Eigen::VectorXcd x = qr.solve(b);

  InterpolationCoeffs out;
  out.base = ks_a.w;
  out.zeros = zeros;
  out.c = Eigen::MatrixXcd::Zero(n, n);
  out.c(0, 0) = x(0);
  for (int j = 0; j + 1 < n; ++j)
    for (int k = 0; k + 1 < n; ++k) out.c(j + 1, k + 1) = x(1 + j * (n - 1) + k);

  double fit_res = 0.0;
  for (std::size_t r = 0; r < fit_rows.size(); ++r)
    fit_res = std::max(fit_res, std::abs(fit_rows[r].cwiseProduct(x).sum() - fit_rhs[r]));
  double held_res = 0.0;
  for (std::size_t r = 0; r < held_rows.size(); ++r)
    held_res = std::max(held_res, std::abs(held_rows[r].cwiseProduct(x).sum() - held_rhs[r]));
  out.fit_residual = fit_res;
  out.heldout_residual = held_res;
  return out;
}

// Residual of the companion identity for the Garabedian kernel, in the
// multiplied-through form
//   L(z,w)(f(z) - f(w)) - f(w) [ c_00 S(z,a) L(w,a)
//                              + sum conj(c_kj) S(z,a_j) L(w,a_k) ],
// sampled over boundary z and a few interior w.  The coefficient block
// enters through its conjugate transpose; the matrix is Hermitian in exact
// arithmetic, so this equals the block itself, while elementwise
// conjugation without the transpose fails off the two-connected case.
inline double paired_identity_residual(const BoundaryGrid& g, const SzegoSolver& solver,
                                       const KernelSet& ks_a, const AhlforsEvaluator& f,
                                       const InterpolationCoeffs& coeffs) {
  const int n = static_cast<int>(coeffs.zeros.size()) + 1;
  const KernelField field_a(g, ks_a);
  std::vector<KernelField> field_z;
  for (const cplx& aj : coeffs.zeros) field_z.emplace_back(g, solver.solve(aj));

  const detail::InterpSamples samples = detail::interp_samples(g);
  double worst = 0.0;
  for (const cplx& w : samples.w_points) {
    // L(w, a) and L(w, a_k) have simple poles at the sources; the identity
    // stays finite there only as a limit, so such samples are skipped.
    double pole_gap = std::abs(w - f.source());
    for (const cplx& aj : coeffs.zeros) pole_gap = std::min(pole_gap, std::abs(w - aj));
    if (pole_gap < 5.0 * g.max_spacing) continue;
    const KernelSet ks_w = solver.solve(w);
    const cplx fw = f.value(w);
    const cplx lwa = field_a.garabedian(w);
    std::vector<cplx> lwz(n - 1);
    for (int k = 0; k + 1 < n; ++k) lwz[k] = field_z[k].garabedian(w);

    for (const int i : samples.z_nodes) {
      cplx rhs = coeffs.c(0, 0) * ks_a.S[i] * lwa;
      for (int j = 0; j + 1 < n; ++j)
        for (int k = 0; k + 1 < n; ++k)
          rhs += std::conj(coeffs.c(k + 1, j + 1)) * field_z[j].set().S[i] * lwz[k];
      const cplx lhs = ks_w.L[i] * (f.boundary()[i] - fw);
      worst = std::max(worst, std::abs(lhs - fw * rhs));
    }
  }
  return worst;
}

}  // namespace kernmap
