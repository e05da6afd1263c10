#pragma once

// Deterministic writers for the command line tool.  Floating point output
// goes through one fixed %.17g formatter so repeated runs produce byte
// identical files.

#include <cstdio>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kernmap/context.hpp"
#include "kernmap/green.hpp"
#include "kernmap/verify.hpp"

namespace kernmap {

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf);
}

namespace detail {

inline std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file: " + path);
  return out;
}

inline nlohmann::json complex_json(cplx z) {
  return nlohmann::json::array({z.real(), z.imag()});
}

inline nlohmann::json matrix_json(const Eigen::MatrixXcd& M) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < M.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < M.cols(); ++j) row.push_back(complex_json(M(i, j)));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace detail

// Boundary kernel samples for every requested source point.
inline void write_kernels_csv(const std::string& path, const DomainContext& ctx) {
  const BoundaryGrid& g = ctx.grid();
  std::ofstream out = detail::open_out(path);
  out << "source,curve,node,x,y,re_S,im_S,re_L,im_L\n";
  for (std::size_t s = 0; s < ctx.sources().size(); ++s) {
    const KernelSet ks = ctx.szego().solve(ctx.sources()[s]);
    for (int c = 0; c < g.n; ++c)
      for (int i = 0; i < g.m; ++i) {
        const int idx = g.flat(c, i);
        out << s << ',' << c << ',' << i << ',' << fmt(g.z[idx].real()) << ','
            << fmt(g.z[idx].imag()) << ',' << fmt(ks.S[idx].real()) << ','
            << fmt(ks.S[idx].imag()) << ',' << fmt(ks.L[idx].real()) << ','
            << fmt(ks.L[idx].imag()) << '\n';
      }
  }
}

// Boundary trace of the unit-disc map based at the context base point.
inline void write_map_csv(const std::string& path, const DomainContext& ctx) {
  const BoundaryGrid& g = ctx.grid();
  const KernelSet ks = ctx.szego().solve(ctx.base_point());
  const AhlforsEvaluator f(g, ks);
  std::ofstream out = detail::open_out(path);
  out << "curve,node,x,y,re_f,im_f,abs_f\n";
  for (int c = 0; c < g.n; ++c)
    for (int i = 0; i < g.m; ++i) {
      const int idx = g.flat(c, i);
      const cplx v = f.boundary()[idx];
      out << c << ',' << i << ',' << fmt(g.z[idx].real()) << ',' << fmt(g.z[idx].imag()) << ','
          << fmt(v.real()) << ',' << fmt(v.imag()) << ',' << fmt(std::abs(v)) << '\n';
    }
}

// Period data, transition matrix, and per-source masses.
inline void write_frame_json(const std::string& path, const DomainContext& ctx) {
  const BoundaryGrid& g = ctx.grid();
  const HarmonicFrame& frame = ctx.frame();
  nlohmann::json j;
  j["curves"] = g.n;
  j["holes"] = frame.holes();
  j["nodes_per_curve"] = g.m;
  j["base_point"] = detail::complex_json(ctx.base_point());
  j["signs"] = {{"eps1", ctx.flags().eps1},
                {"eps2", ctx.flags().eps2},
                {"eps_poisson", ctx.flags().eps_poisson}};
  j["period_matrix"] = detail::matrix_json(frame.period_matrix());
  j["sigma"] = detail::matrix_json(frame.sigma());
  {
    nlohmann::json rows = nlohmann::json::array();
    const Eigen::MatrixXd R = frame.i_sigma();
    for (int i = 0; i < R.rows(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (int k = 0; k < R.cols(); ++k) row.push_back(R(i, k));
      rows.push_back(row);
    }
    j["i_sigma"] = rows;
  }
  nlohmann::json sources = nlohmann::json::array();
  for (const cplx& w : ctx.sources()) {
    const KernelSet ks = ctx.szego().solve(w);
    nlohmann::json entry;
    entry["w"] = detail::complex_json(w);
    entry["S_ww"] = ks.S_ww;
    nlohmann::json lam = nlohmann::json::array();
    for (double v : lambda_values(g, ks)) lam.push_back(v);
    entry["lambda"] = lam;
    nlohmann::json om = nlohmann::json::array();
    for (int k = 0; k < frame.holes(); ++k) om.push_back(frame.omega(k, w));
    entry["omega"] = om;
    sources.push_back(entry);
  }
  j["sources"] = sources;
  std::ofstream out = detail::open_out(path);
  out << j.dump(2) << '\n';
}

// Samples a scalar field over the bounding box of the domain.  Points
// outside the closed region come out as nan.
inline void write_field_csv(const std::string& path, const BoundaryGrid& g, int nx, int ny,
                            const std::function<double(cplx)>& field) {
  double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
  for (const cplx& p : g.dense[g.outer()]) {
    xlo = std::min(xlo, p.real());
    xhi = std::max(xhi, p.real());
    ylo = std::min(ylo, p.imag());
    yhi = std::max(yhi, p.imag());
  }
  std::ofstream out = detail::open_out(path);
  out << "x,y,value\n";
  const double guard = 1e-9 * g.diameter;
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix) {
      const cplx p(xlo + (xhi - xlo) * ix / (nx - 1), ylo + (yhi - ylo) * iy / (ny - 1));
      double v = std::nan("");
      if (g.min_boundary_distance(p) > guard && g.contains(p)) v = field(p);
      out << fmt(p.real()) << ',' << fmt(p.imag()) << ',' << fmt(v) << '\n';
    }
}

// Boundary-indexed scalar, one row per node.
inline void write_boundary_csv(const std::string& path, const BoundaryGrid& g,
                               const std::vector<double>& values) {
  std::ofstream out = detail::open_out(path);
  out << "curve,node,x,y,value\n";
  for (int c = 0; c < g.n; ++c)
    for (int i = 0; i < g.m; ++i) {
      const int idx = g.flat(c, i);
      out << c << ',' << i << ',' << fmt(g.z[idx].real()) << ',' << fmt(g.z[idx].imag()) << ','
          << fmt(values[idx]) << '\n';
    }
}

inline nlohmann::json report_json(const std::vector<CheckRecord>& records) {
  nlohmann::json arr = nlohmann::json::array();
  bool all = true;
  for (const CheckRecord& r : records) {
    nlohmann::json e;
    e["identity"] = r.identity;
    e["domain"] = r.domain;
    e["probes"] = r.probes;
    e["max_residual"] = r.max_residual;
    e["tolerance"] = r.tolerance;
    e["pass"] = r.pass;
    if (!r.note.empty()) e["note"] = r.note;
    arr.push_back(e);
    all = all && r.pass;
  }
  nlohmann::json j;
  j["checks"] = arr;
  j["all_pass"] = all;
  return j;
}

inline void write_report_json(const std::string& path, const std::vector<CheckRecord>& records) {
  std::ofstream out = detail::open_out(path);
  out << report_json(records).dump(2) << '\n';
}

inline std::string format_report_table(const std::vector<CheckRecord>& records) {
  std::string s;
  for (const CheckRecord& r : records) {
    s += r.pass ? "PASS  " : "FAIL  ";
    std::string name = r.identity;
    name.resize(34, ' ');
    s += name;
    s += " residual ";
    s += fmt(r.max_residual);
    s += " tol ";
    s += fmt(r.tolerance);
    if (!r.note.empty()) {
      s += "  [";
      s += r.note;
      s += ']';
    }
    s += '\n';
  }
  return s;
}

}  // namespace kernmap
