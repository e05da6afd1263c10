#pragma once

// The machine-checkable identity suite.  Every relation the library is
// supposed to satisfy is evaluated as a residual against a named
// tolerance, producing one record per identity.  Tolerances are owned by
// the caller (config file or defaults below); the checks contain none of
// their own constants.

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "kernmap/context.hpp"
#include "kernmap/green.hpp"
#include "kernmap/harmonic.hpp"
#include "kernmap/interp.hpp"
#include "kernmap/szego.hpp"
#include "kernmap/types.hpp"

namespace kernmap {

struct CheckRecord {
  std::string identity;
  std::string domain;
  int probes = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;
};

inline std::map<std::string, double> default_tolerances() {
  return {
      {"reproducing_property", 1e-7},
      {"kernel_hermitian_symmetry", 1e-8},
      {"garabedian_total_residue", 1e-8},
      {"map_unimodular_boundary", 1e-8},
      {"map_base_normalization", 1e-8},
      {"map_derivative_normalization", 1e-6},
      {"map_winding_degree", 0.0},
      {"tangential_log_derivative", 1e-6},
      {"boundary_reflection_gradient", 1e-6},
      {"gradient_matches_direct", 1e-4},
      {"decomposition_total", 1e-5},
      {"path_independence", 1e-6},
      {"contour_lambda", 1e-6},
      {"contour_lambda_purity", 1e-8},
      {"lambda_partition", 1e-8},
      {"lambda_measure_affinity", 0.05},
      {"crosscut_coefficients", 1e-5},
      {"crosscut_purity", 1e-8},
      {"composition_correction", 1e-5},
      {"poisson_positive", 0.0},
      {"poisson_unit_mass", 1e-7},
      {"poisson_purity", 1e-8},
      {"poisson_measure_contour", 1e-6},
      {"interpolation_identity_primary", 1e-6},
      {"interpolation_identity_paired", 1e-5},
      {"interpolation_single_constant", 1e-8},
      {"period_purity", 1e-8},
      {"sigma_real", 1e-10},
      {"u_normalization", 1e-8},
      {"measure_boundary_values", 1e-8},
      {"measure_range", 1e-8},
      {"measure_reconstruction", 1e-6},
      {"mu_gradient", 1e-5},
      {"green_symmetry", 1e-6},
      {"green_positive", 0.0},
      {"green_boundary_decay", 0.0},
      {"green_harmonic", 1e-4},
  };
}

class VerifySuite {
 public:
  VerifySuite(const DomainContext& ctx, std::string domain_label,
              std::map<std::string, double> tolerances = default_tolerances())
      : ctx_(&ctx), label_(std::move(domain_label)), tol_(std::move(tolerances)) {}

  std::vector<CheckRecord> run() {
    records_.clear();
    const BoundaryGrid& g = ctx_->grid();
    const SignFlags flags = ctx_->flags();
    {
      CheckRecord r;
      r.identity = "sign_calibration";
      r.domain = label_;
      r.tolerance = 0.0;
      r.max_residual = 0.0;
      r.pass = true;
      r.note = "eps1=" + std::to_string(flags.eps1) + " eps2=" + std::to_string(flags.eps2) +
               " eps_poisson=" + std::to_string(flags.eps_poisson);
      records_.push_back(r);
    }

    far_probes_ = interior_probes(g, 12, 5.0 * g.max_spacing);
    kernel_checks();
    map_checks();
    frame_checks();
    for (const cplx& w : ctx_->sources()) source_checks(w);
    interpolation_checks();
    return records_;
  }

 private:
  void add(const std::string& identity, int probes, double residual,
           const std::string& note = "") {
    CheckRecord r;
    r.identity = identity;
    r.domain = label_;
    r.probes = probes;
    r.max_residual = residual;
    r.tolerance = tol_.count(identity) ? tol_.at(identity) : 0.0;
    r.pass = residual <= r.tolerance;
    r.note = note;
    records_.push_back(r);
  }

  void kernel_checks() {
    const BoundaryGrid& g = ctx_->grid();
    const cplx w = ctx_->sources().front();
    const KernelSet ks = ctx_->szego().solve(w);

    // Reproducing property: integrating h against conj(S) recovers h(w).
    double worst = 0.0;
    for (int k = 0; k <= 5; ++k) {
      cplx acc = 0.0;
      for (int i = 0; i < g.total(); ++i)
        acc += std::pow(g.z[i], k) * std::conj(ks.S[i]) * g.ds[i];
      worst = std::max(worst, std::abs(acc - std::pow(w, k)));
    }
    add("reproducing_property", 6, worst);

    // Hermitian symmetry S(z,w) = conj(S(w,z)) at interior pairs.
    const KernelField field_w(g, ks);
    double sym = 0.0;
    for (int p = 0; p < 2; ++p) {
      const cplx z = far_probes_[p + 1];
      const KernelSet ks_z = ctx_->szego().solve(z);
      const KernelField field_z(g, ks_z);
      sym = std::max(sym, std::abs(field_w.szego(z) - std::conj(field_z.szego(w))));
    }
    add("kernel_hermitian_symmetry", 2, sym);

    // The full boundary integral of L picks up exactly the pole at w.
    cplx res = 0.0;
    for (int i = 0; i < g.total(); ++i) res += ks.L[i] * g.wdz[i];
    add("garabedian_total_residue", g.total(), std::abs(res - iu));
  }

  void map_checks() {
    const BoundaryGrid& g = ctx_->grid();
    const cplx a = ctx_->base_point();
    const KernelSet ks = ctx_->szego().solve(a);
    const AhlforsEvaluator f(g, ks);

    double uni = 0.0;
    for (const cplx& v : f.boundary()) uni = std::max(uni, std::abs(std::abs(v) - 1.0));
    add("map_unimodular_boundary", g.total(), uni);

    add("map_base_normalization", 1, std::abs(f.value(a)));

    const cplx fpa = f.deriv(a);
    const double target = 2.0 * pi * ks.S_ww;
    add("map_derivative_normalization", 1, std::abs(fpa - target) / target,
        "f'(a) against 2 pi S(a,a)");

    const int deg = f.degree();
    add("map_winding_degree", 1, std::abs(deg - g.n), "total boundary winding vs connectivity");

    // Tangential derivative of log|f| vanishes on the boundary.
    double tang = 0.0;
    for (int i = 0; i < g.total(); ++i) {
      const cplx q = f.boundary_deriv()[i] / f.boundary()[i] * g.T[i];
      tang = std::max(tang, std::abs(2.0 * q.real()));
    }
    add("tangential_log_derivative", g.total(), tang);
  }

  void frame_checks() {
    const BoundaryGrid& g = ctx_->grid();
    const HarmonicFrame& frame = ctx_->frame();
    const int holes = frame.holes();
    if (holes == 0) return;

    const auto& P = frame.period_matrix();
    double pmax = 0.0, preal = 0.0;
    for (int k = 0; k < holes; ++k)
      for (int j = 0; j < holes; ++j) {
        pmax = std::max(pmax, std::abs(P(k, j)));
        preal = std::max(preal, std::abs(P(k, j).real()));
      }
    add("period_purity", holes * holes, preal / pmax, "relative to the largest period");

    add("sigma_real", holes * holes, frame.i_sigma_imag_residual());

    // Contour normalization of the u_j basis.
    double unorm = 0.0;
    for (int k = 0; k < holes; ++k)
      for (int j = 0; j < holes; ++j) {
        cplx acc = 0.0;
        for (int i = 0; i < g.m; ++i) {
          const int idx = g.flat(k, i);
          acc += frame.u_boundary(j)[idx] * g.wdz[idx];
        }
        unorm = std::max(unorm, std::abs(acc - (k == j ? 1.0 : 0.0)));
      }
    add("u_normalization", holes * holes, unorm);

    double bres = 0.0;
    for (int j = 0; j < holes; ++j) {
      std::vector<double> data(g.total(), 0.0);
      for (int i = 0; i < g.m; ++i) data[g.flat(j, i)] = 1.0;
      bres = std::max(bres, frame.measure_solution(j).boundary_residual(data));
    }
    add("measure_boundary_values", holes * g.total(), bres);

    double range = 0.0;
    for (const cplx& z : far_probes_) {
      for (int j = 0; j < holes; ++j) {
        const double v = frame.omega(j, z);
        range = std::max(range, std::max(-v, v - 1.0));
      }
      const double vo = frame.omega_outer(z);
      range = std::max(range, std::max(-vo, vo - 1.0));
    }
    add("measure_range", static_cast<int>(far_probes_.size()), std::max(range, 0.0));

    // mu_j gradient identity 2 d mu / dz = i u_j by centered differences.
    const double h = 1e-5 * g.diameter;
    double mu_res = 0.0;
    for (int p = 0; p < 3; ++p) {
      const cplx z = far_probes_[p];
      for (int j = 0; j < holes; ++j) {
        const double gx = (frame.mu_field(j, z + h) - frame.mu_field(j, z - h)) / (2.0 * h);
        const double gy =
            (frame.mu_field(j, z + iu * h) - frame.mu_field(j, z - iu * h)) / (2.0 * h);
        const cplx two_mu_z = cplx(gx, -gy);
        mu_res = std::max(mu_res, std::abs(two_mu_z - iu * frame.u_field(j, z)));
      }
    }
    add("mu_gradient", 3 * holes, mu_res);
  }

  void source_checks(cplx w) {
    const BoundaryGrid& g = ctx_->grid();
    const HarmonicFrame& frame = ctx_->frame();
    const GreenAssembly asm_w = ctx_->assembly(w);
    const int holes = frame.holes();
    const std::string wtag = " (w near " + std::to_string(w.real()) + "," +
                             std::to_string(w.imag()) + ")";

    // Boundary reflection of the gradient: Re[G_z T] = 0 on the boundary.
    double refl = 0.0;
    for (int i = 0; i < g.total(); ++i)
      refl = std::max(refl, std::abs(2.0 * (asm_w.green_z_boundary(i) * g.T[i]).real()));
    add("boundary_reflection_gradient", g.total(), refl, wtag);

    // Assembled gradient against finite differences of the direct solve.
    const double h = 1e-5 * g.diameter;
    double fd_res = 0.0;
    int used = 0;
    for (const cplx& z : far_probes_) {
      if (std::abs(z - w) < 20.0 * h) continue;
      const double gx = (asm_w.green_direct(z + h) - asm_w.green_direct(z - h)) / (2.0 * h);
      const double gy =
          (asm_w.green_direct(z + iu * h) - asm_w.green_direct(z - iu * h)) / (2.0 * h);
      fd_res = std::max(fd_res, std::abs(asm_w.green_z(z) - 0.5 * cplx(gx, -gy)));
      ++used;
    }
    add("gradient_matches_direct", used, fd_res, wtag);

    // Green symmetry at probe pairs.
    double symm = 0.0;
    int pairs = 0;
    for (int p = 0; p + 1 < static_cast<int>(far_probes_.size()) && pairs < 3; p += 2) {
      const cplx z = far_probes_[p];
      if (std::abs(z - w) < 1e-3 * g.diameter) continue;
      const GreenAssembly asm_z = ctx_->assembly(z);
      symm = std::max(symm, std::abs(asm_w.green_direct(z) - asm_z.green_direct(w)));
      ++pairs;
    }
    add("green_symmetry", pairs, symm, wtag);

    double neg = 0.0;
    for (const cplx& z : far_probes_)
      if (std::abs(z - w) > 1e-6) neg = std::max(neg, -asm_w.green_direct(z));
    add("green_positive", static_cast<int>(far_probes_.size()), std::max(neg, 0.0), wtag);

    // Vanishing toward the boundary, approached from the node farthest
    // from the source.
    {
      int far_node = g.flat(g.outer(), 0);
      for (int i = 0; i < g.m; ++i) {
        const int idx = g.flat(g.outer(), i);
        if (std::abs(g.z[idx] - w) > std::abs(g.z[far_node] - w)) far_node = idx;
      }
      const cplx inward = iu * g.T[far_node];
      const double d0 = 0.06 * g.diameter;
      const double vals[3] = {asm_w.green_direct(g.z[far_node] + d0 * inward),
                              asm_w.green_direct(g.z[far_node] + 0.5 * d0 * inward),
                              asm_w.green_direct(g.z[far_node] + 0.25 * d0 * inward)};
      const double viol = std::max({vals[1] - vals[0], vals[2] - vals[1], -vals[2]});
      add("green_boundary_decay", 3, std::max(viol, 0.0), wtag);
    }

    // Five-point Laplacian residual away from the source.
    {
      const double hh = 1e-3;
      double lap = 0.0;
      int used_l = 0;
      for (int p = 0; p < 3; ++p) {
        const cplx z = far_probes_[p];
        if (std::abs(z - w) < 0.05 * g.diameter) continue;
        const double l =
            (asm_w.green_direct(z + hh) + asm_w.green_direct(z - hh) +
             asm_w.green_direct(z + iu * hh) + asm_w.green_direct(z - iu * hh) -
             4.0 * asm_w.green_direct(z)) /
            (hh * hh);
        lap = std::max(lap, std::abs(l));
        ++used_l;
      }
      add("green_harmonic", used_l, lap, wtag);
    }

    // Decomposition split and its total, plus path independence through two
    // different via points.
    {
      double worst = 0.0;
      int used_d = 0;
      for (int p = 0; p < 4; ++p) {
        const cplx z = far_probes_[p];
        if (std::abs(z - w) < asm_w.exclusion_radius()) continue;
        const auto dec = asm_w.decompose(z);
        worst = std::max(worst, std::abs(dec.total - asm_w.green_direct(z)));
        ++used_d;
      }
      add("decomposition_total", used_d, worst, wtag);

      cplx target = far_probes_[4];
      if (std::abs(target - w) < asm_w.exclusion_radius()) target = far_probes_[5];
      const double g1 = asm_w.green_by_path(target, {far_probes_[6]});
      const double g2 = asm_w.green_by_path(target, {far_probes_[7]});
      add("path_independence", 2, std::abs(g1 - g2), wtag);
    }

    // lambda by contour integral of the principal term vs arc length.
    if (holes > 0) {
      const std::vector<double> lam = asm_w.lambda();
      double worst = 0.0, purity = 0.0, partition = 0.0;
      for (int k = 0; k < holes; ++k) {
        const cplx via_contour = asm_w.lambda_by_contour(k);
        worst = std::max(worst, std::abs(via_contour.real() - lam[k]));
        purity = std::max(purity, std::abs(via_contour.imag()));
      }
      double total = 0.0;
      for (double v : lam) total += v;
      partition = std::abs(total - 1.0);
      add("contour_lambda", holes, worst, wtag);
      add("contour_lambda_purity", holes, purity, wtag);
      add("lambda_partition", g.n, partition, wtag);
    } else {
      const std::vector<double> lam = asm_w.lambda();
      add("lambda_partition", 1, std::abs(lam[0] - 1.0), wtag);
    }

    // Crosscut coefficients both ways, and the composed correction term.
    if (holes > 0) {
      double vres = 0.0, vimag = 0.0;
      std::vector<double> vk(holes);
      for (int k = 0; k < holes; ++k) {
        vk[k] = asm_w.crosscut_v(k);
        const cplx ref = asm_w.crosscut_v_reference(k);
        vres = std::max(vres, std::abs(vk[k] - ref.real()));
        vimag = std::max(vimag, std::abs(ref.imag()));
      }
      add("crosscut_coefficients", holes, vres, wtag);
      add("crosscut_purity", holes, vimag, wtag);

      cplx z = far_probes_[2];
      if (std::abs(z - w) < asm_w.exclusion_radius()) z = far_probes_[3];
      const auto dec = asm_w.decompose(z);
      double composed = 0.0;
      double recon_res = 0.0;
      for (int k = 0; k < holes; ++k) {
        const PathSpec path = asm_w.route(asm_w.base_point(), z);
        const double om_path = reconstruct_omega_by_path(frame, k, path);
        recon_res = std::max(recon_res, std::abs(om_path - frame.omega(k, z)));
        composed += 2.0 * vk[k] * om_path;
      }
      add("measure_reconstruction", holes, recon_res, wtag);
      add("composition_correction", holes, std::abs(composed - dec.correction), wtag);

      // lambda tracks the harmonic measure near the boundary.  The probes
      // stay at least five grid spacings away from the rim so the check
      // measures the genuine gap rather than quadrature breakdown.
      {
        const int idx0 = g.flat(0, 0);
        const cplx inward = iu * g.T[idx0];
        double spacing0 = 0.0;
        for (int i = 0; i < g.m; ++i) spacing0 = std::max(spacing0, g.ds[g.flat(0, i)]);
        double worst_gap = 0.0;
        for (double mult : {8.0, 6.5, 5.0}) {
          const cplx p = g.z[idx0] + mult * spacing0 * inward;
          const KernelSet ks_p = ctx_->szego().solve(p);
          const std::vector<double> lam_p = lambda_values(g, ks_p);
          worst_gap = std::max(worst_gap, std::abs(lam_p[0] - frame.omega(0, p)));
        }
        add("lambda_measure_affinity", 3, worst_gap, wtag);
      }
    }

    // Poisson kernel: purity, positivity, unit mass, and the contour form
    // of the harmonic measure.
    {
      double purity = 0.0, minp = 1e300, mass = 0.0;
      for (int i = 0; i < g.total(); ++i) {
        const cplx p = asm_w.poisson_complex(i);
        purity = std::max(purity, std::abs(p.imag()));
        minp = std::min(minp, p.real());
        mass += p.real() * g.ds[i];
      }
      add("poisson_purity", g.total(), purity, wtag);
      add("poisson_positive", g.total(), std::max(0.0, -minp), wtag);
      add("poisson_unit_mass", g.total(), std::abs(mass - 1.0), wtag);
      if (holes > 0) {
        double worst = 0.0;
        for (int k = 0; k < holes; ++k)
          worst = std::max(worst,
                           std::abs(asm_w.contour_green_z(k) - iu * pi * frame.omega(k, w)));
        add("poisson_measure_contour", holes, worst, wtag);
      }
    }
  }

  void interpolation_checks() {
    const BoundaryGrid& g = ctx_->grid();
    const cplx a = ctx_->base_point();
    const KernelSet ks_a = ctx_->szego().solve(a);
    const AhlforsEvaluator f(g, ks_a);
    const std::vector<cplx> zeros = szego_zeros(g, KernelField(g, ks_a));
    const InterpolationCoeffs coeffs =
        fit_interpolation_coeffs(g, ctx_->szego(), ks_a, f, zeros);
    add("interpolation_identity_primary", static_cast<int>(zeros.size()) + 1,
        coeffs.heldout_residual);
    add("interpolation_identity_paired", static_cast<int>(zeros.size()) + 1,
        paired_identity_residual(g, ctx_->szego(), ks_a, f, coeffs));
    if (g.n == 1) {
      // Evaluating the collapsed identity at z = w = a pins the single
      // coefficient of a simply connected domain to 1/S(a,a).
      const double expect = 1.0 / ks_a.S_ww;
      const double rel = std::abs(coeffs.c(0, 0) - expect) / expect;
      add("interpolation_single_constant", 1, rel, "c_00 against 1/S(a,a)");
    }
  }

  const DomainContext* ctx_;
  std::string label_;
  std::map<std::string, double> tol_;
  std::vector<CheckRecord> records_;
  std::vector<cplx> far_probes_;
};

}  // namespace kernmap
