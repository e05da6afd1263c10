#pragma once

// Harmonic machinery on a multiply connected domain: a double-layer
// Dirichlet solver with one logarithmic source per hole, harmonic
// measures, their analytic derivatives F_j', the period matrix and its
// inverse transpose sigma, the u_j basis, the mu_j potentials, and the
// arc-length functionals lambda_j.

#include <cmath>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "kernmap/cauchy.hpp"
#include "kernmap/geometry.hpp"
#include "kernmap/path.hpp"
#include "kernmap/spectral.hpp"
#include "kernmap/szego.hpp"
#include "kernmap/types.hpp"

namespace kernmap {

// Solution of one Dirichlet problem.  The double-layer part is carried by
// its holomorphic completion h, whose real part is the layer potential;
// interior values and derivatives come through compensated Cauchy sums,
// which keeps them accurate arbitrarily close to the boundary.
class DirichletSolution {
 public:
  DirichletSolution(const BoundaryGrid& g, std::vector<double> mu, std::vector<double> log_coeff,
                    std::vector<cplx> holes, std::vector<cplx> hplus)
      : g_(&g),
        mu_(std::move(mu)),
        log_coeff_(std::move(log_coeff)),
        holes_(std::move(holes)),
        h_ev_(g, std::move(hplus)) {
    // Boundary gradient 2 du/dz from the tangential derivative of the
    // trace plus the log sources.
    grad2_bdry_.resize(g.total());
    for (int c = 0; c < g.n; ++c) {
      std::vector<cplx> seg(h_ev_.samples().begin() + g.flat(c, 0),
                            h_ev_.samples().begin() + g.flat(c, 0) + g.m);
      const std::vector<cplx> dseg = spectral_derivative(seg);
      for (int i = 0; i < g.m; ++i) {
        const int idx = g.flat(c, i);
        grad2_bdry_[idx] = dseg[i] / g.dz[idx] + log_terms(g.z[idx]);
      }
    }
  }

  double value(cplx z) const {
    double acc = h_ev_.value(z).real();
    for (std::size_t k = 0; k < holes_.size(); ++k)
      acc += log_coeff_[k] * std::log(std::abs(z - holes_[k]));
    return acc;
  }

  // 2 du/dz, holomorphic in the domain.
  cplx grad2(cplx z) const { return h_ev_.deriv(z) + log_terms(z); }

  cplx grad2_boundary(int i) const { return grad2_bdry_[i]; }

  double normal_deriv(int i) const { return (grad2_bdry_[i] * g_->T[i]).imag(); }

  double boundary_residual(const std::vector<double>& data) const {
    double worst = 0.0;
    for (int i = 0; i < g_->total(); ++i)
      worst = std::max(worst, std::abs(value(g_->z[i]) - data[i]));
    return worst;
  }

  const std::vector<double>& density() const { return mu_; }
  const std::vector<double>& log_coeffs() const { return log_coeff_; }
  const std::vector<cplx>& hole_points() const { return holes_; }

 private:
  cplx log_terms(cplx z) const {
    cplx acc = 0.0;
    for (std::size_t k = 0; k < holes_.size(); ++k) acc += log_coeff_[k] / (z - holes_[k]);
    return acc;
  }

  const BoundaryGrid* g_;
  std::vector<double> mu_;
  std::vector<double> log_coeff_;
  std::vector<cplx> holes_;
  CauchyEvaluator h_ev_;
  std::vector<cplx> grad2_bdry_;
};

// Nystrom discretization of the double-layer equation, augmented with one
// logarithmic source per hole and a zero-mean constraint per inner curve
// to make the multiply connected problem uniquely solvable.
class DirichletSolver {
 public:
  explicit DirichletSolver(const BoundaryGrid& g) : g_(&g) {
    const int N = g.total();
    const int holes = g.n - 1;
    for (int c = 0; c < holes; ++c) {
      cplx acc = 0.0;
      for (const cplx& p : g.dense[c]) acc += p;
      holes_.push_back(acc / static_cast<double>(g.dense[c].size()));
    }

    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(N + holes, N + holes);
    for (int i = 0; i < N; ++i) {
      M(i, i) = 1.0;
      for (int j = 0; j < N; ++j) {
        const double kernel =
            (i == j) ? g.kappa[i] / (2.0 * pi)
                     : (g.T[j] / (g.z[j] - g.z[i])).imag() / pi;
        M(i, j) += kernel * g.ds[j];
      }
      for (int k = 0; k < holes; ++k)
        M(i, N + k) = std::log(std::abs(g.z[i] - holes_[k]));
    }
    for (int k = 0; k < holes; ++k)
      for (int i = 0; i < g.m; ++i) M(N + k, g.flat(k, i)) = g.ds[g.flat(k, i)];

    lu_.compute(M);
    const auto diag = lu_.matrixLU().diagonal();
    double lo = 1e300, hi = 0.0;
    for (int i = 0; i < N + holes; ++i) {
      lo = std::min(lo, std::abs(diag(i)));
      hi = std::max(hi, std::abs(diag(i)));
    }
    if (lo < 1e-13 * hi)
      throw NumericalError("Dirichlet system numerically singular, pivot ratio " +
                           std::to_string(lo / hi));
  }

  const BoundaryGrid& grid() const { return *g_; }
  const std::vector<cplx>& hole_points() const { return holes_; }

  DirichletSolution solve(const std::vector<double>& data) const {
    const BoundaryGrid& g = *g_;
    const int N = g.total();
    const int holes = g.n - 1;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(N + holes);
    for (int i = 0; i < N; ++i) rhs(i) = data[i];
    const Eigen::VectorXd x = lu_.solve(rhs);

    std::vector<double> mu(N);
    for (int i = 0; i < N; ++i) mu[i] = x(i);
    std::vector<double> logc(holes);
    for (int k = 0; k < holes; ++k) logc[k] = x(N + k);

    // Boundary trace of the holomorphic completion h = 2 C mu, with the
    // singularity subtracted; the diagonal carries the density's own
    // tangential derivative.
    std::vector<cplx> hplus(N);
    std::vector<std::vector<cplx>> dmu(g.n);
    for (int c = 0; c < g.n; ++c) {
      std::vector<cplx> seg(g.m);
      for (int i = 0; i < g.m; ++i) seg[i] = mu[g.flat(c, i)];
      dmu[c] = spectral_derivative(seg);
    }
    for (int i = 0; i < N; ++i) {
      cplx acc = 0.0;
      for (int j = 0; j < N; ++j) {
        if (j == i)
          acc += dmu[g.curve_of(i)][i - g.flat(g.curve_of(i), 0)] * (2.0 * pi / g.m);
        else
          acc += (mu[j] - mu[i]) * g.wdz[j] / (g.z[j] - g.z[i]);
      }
      hplus[i] = 2.0 * mu[i] + acc / (pi * iu);
    }
    return DirichletSolution(g, std::move(mu), std::move(logc), holes_, std::move(hplus));
  }

 private:
  const BoundaryGrid* g_;
  std::vector<cplx> holes_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
};

// Harmonic measures of the inner curves and everything built on them.
class HarmonicFrame {
 public:
  HarmonicFrame(const BoundaryGrid& g, const DirichletSolver& solver) : g_(&g) {
    const int holes = g.n - 1;
    for (int j = 0; j < holes; ++j) {
      std::vector<double> data(g.total(), 0.0);
      for (int i = 0; i < g.m; ++i) data[g.flat(j, i)] = 1.0;
      sols_.push_back(solver.solve(data));
    }

    // F_j' at the nodes from the normal derivative: for data constant on
    // every curve the gradient is purely normal, so projecting out the
    // tangential part also filters discretization noise.
    fp_bdry_.resize(holes);
    for (int j = 0; j < holes; ++j) {
      fp_bdry_[j].resize(g.total());
      for (int i = 0; i < g.total(); ++i)
        fp_bdry_[j][i] = iu * sols_[j].normal_deriv(i) * std::conj(g.T[i]);
    }

    P_ = Eigen::MatrixXcd::Zero(holes, holes);
    for (int k = 0; k < holes; ++k)
      for (int j = 0; j < holes; ++j) {
        cplx acc = 0.0;
        for (int i = 0; i < g.m; ++i) {
          const int idx = g.flat(k, i);
          acc += fp_bdry_[j][idx] * g.wdz[idx];
        }
        P_(k, j) = acc;
      }

    if (holes > 0) {
      Eigen::PartialPivLU<Eigen::MatrixXcd> plu(P_.transpose());
      const auto diag = plu.matrixLU().diagonal();
      double lo = 1e300, hi = 0.0;
      for (int i = 0; i < holes; ++i) {
        lo = std::min(lo, std::abs(diag(i)));
        hi = std::max(hi, std::abs(diag(i)));
      }
      if (hi == 0.0 || lo < 1e-12 * hi)
        throw NumericalError("period matrix is numerically singular");
      sigma_ = plu.solve(Eigen::MatrixXcd::Identity(holes, holes));
    } else {
      sigma_.resize(0, 0);
    }

    u_bdry_.resize(holes);
    for (int j = 0; j < holes; ++j) {
      u_bdry_[j].assign(g.total(), 0.0);
      for (int m = 0; m < holes; ++m)
        for (int i = 0; i < g.total(); ++i) u_bdry_[j][i] += sigma_(j, m) * fp_bdry_[m][i];
    }
  }

  const BoundaryGrid& grid() const { return *g_; }
  int holes() const { return g_->n - 1; }

  const DirichletSolution& measure_solution(int j) const { return sols_[j]; }

  double omega(int j, cplx z) const { return sols_[j].value(z); }

  double omega_outer(cplx z) const {
    double acc = 1.0;
    for (const auto& s : sols_) acc -= s.value(z);
    return acc;
  }

  const std::vector<cplx>& fprime_boundary(int j) const { return fp_bdry_[j]; }

  cplx fprime(int j, cplx z) const { return sols_[j].grad2(z); }

  const Eigen::MatrixXcd& period_matrix() const { return P_; }
  const Eigen::MatrixXcd& sigma() const { return sigma_; }

  Eigen::MatrixXd i_sigma() const { return (iu * sigma_).real(); }

  double i_sigma_imag_residual() const {
    return holes() ? (iu * sigma_).imag().cwiseAbs().maxCoeff() : 0.0;
  }

  const std::vector<cplx>& u_boundary(int j) const { return u_bdry_[j]; }

  cplx u_field(int j, cplx z) const {
    cplx acc = 0.0;
    for (int m = 0; m < holes(); ++m) acc += sigma_(j, m) * sols_[m].grad2(z);
    return acc;
  }

  double mu_field(int j, cplx z) const {
    const Eigen::MatrixXd R = i_sigma();
    double acc = 0.0;
    for (int k = 0; k < holes(); ++k) acc += R(j, k) * sols_[k].value(z);
    return acc;
  }

 private:
  const BoundaryGrid* g_;
  std::vector<DirichletSolution> sols_;
  std::vector<std::vector<cplx>> fp_bdry_;
  std::vector<std::vector<cplx>> u_bdry_;
  Eigen::MatrixXcd P_;
  Eigen::MatrixXcd sigma_;
};

// Arc-length masses lambda_j(w) = (1/S(w,w)) * sum over curve j of |S|^2 ds.
// One entry per curve, outer last; the entries sum to 1 by the reproducing
// property.
inline std::vector<double> lambda_values(const BoundaryGrid& g, const KernelSet& ks) {
  std::vector<double> lam(g.n, 0.0);
  for (int c = 0; c < g.n; ++c) {
    double acc = 0.0;
    for (int i = 0; i < g.m; ++i) {
      const int idx = g.flat(c, i);
      acc += std::norm(ks.S[idx]) * g.ds[idx];
    }
    lam[c] = acc / ks.S_ww;
  }
  return lam;
}

// omega_j(z) recovered as the real part of the path integral of F_j' from
// a point of the outer boundary, where omega_j vanishes.
inline double reconstruct_omega_by_path(const HarmonicFrame& frame, int j, const PathSpec& path) {
  return integrate_along_path(path, [&](cplx z) { return frame.fprime(j, z); }, 1e-10).real();
}

}  // namespace kernmap
