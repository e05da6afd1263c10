#pragma once

// Piecewise smooth integration paths inside a domain.  A path is resolved
// from a straight segment by detouring around exclusion discs (holes,
// singular points) along circular arcs, then validated against the domain.

#include <cmath>
#include <functional>
#include <vector>

#include "kernmap/geometry.hpp"
#include "kernmap/quadrature.hpp"
#include "kernmap/types.hpp"

namespace kernmap {

struct ExclusionDisc {
  cplx center;
  double radius = 0.0;
};

struct PathPiece {
  enum class Kind { segment, arc } kind = Kind::segment;
  cplx p0, p1;          // segment endpoints
  cplx center;          // arc data
  double radius = 0.0;
  double theta0 = 0.0;
  double sweep = 0.0;

  cplx at(double s) const {
    if (kind == Kind::segment) return p0 + s * (p1 - p0);
    return center + radius * std::exp(iu * (theta0 + s * sweep));
  }

  cplx vel(double s) const {
    if (kind == Kind::segment) return p1 - p0;
    return iu * radius * sweep * std::exp(iu * (theta0 + s * sweep));
  }

  static PathPiece segment(cplx a, cplx b) {
    PathPiece p;
    p.kind = Kind::segment;
    p.p0 = a;
    p.p1 = b;
    return p;
  }

  static PathPiece arc(cplx c, double r, double th0, double sw) {
    PathPiece p;
    p.kind = Kind::arc;
    p.center = c;
    p.radius = r;
    p.theta0 = th0;
    p.sweep = sw;
    p.p0 = p.at(0.0);
    p.p1 = p.at(1.0);
    return p;
  }
};

struct PathSpec {
  std::vector<PathPiece> pieces;

  cplx start() const { return pieces.front().p0; }
  cplx end() const { return pieces.back().p1; }
};

namespace detail {

inline bool point_clear(const BoundaryGrid& g, const std::vector<ExclusionDisc>& discs, cplx p,
                        double slack) {
  for (const auto& d : discs)
    if (std::abs(p - d.center) < d.radius * (1.0 - 1e-9)) return false;
  const double bd = g.min_boundary_distance(p);
  if (bd < slack) return true;  // resting on the boundary is allowed
  return g.contains(p);
}

inline bool arc_clear(const BoundaryGrid& g, const std::vector<ExclusionDisc>& discs,
                      const PathPiece& a, double slack) {
  for (int k = 0; k <= 48; ++k)
    if (!point_clear(g, discs, a.at(k / 48.0), slack)) return false;
  return true;
}

// Splits the segment [p, q] around every disc it crosses.  Produces the
// pieces in order; recursion handles the remainders of the segment.
inline void route_segment(const BoundaryGrid& g, const std::vector<ExclusionDisc>& discs, cplx p,
                          cplx q, std::vector<PathPiece>& out, int depth) {
  if (depth > 40) throw NumericalError("path routing did not terminate");

  const cplx d = q - p;
  const double len = std::abs(d);
  if (len < 1e-15) return;

  // First disc whose interior the open segment enters.
  int hit = -1;
  double s_in = 2.0, s_out = 0.0;
  for (int k = 0; k < static_cast<int>(discs.size()); ++k) {
    const cplx c = discs[k].center;
    const double r = discs[k].radius;
    // Solve |p + s d - c|^2 = r^2.
    const double aa = std::norm(d);
    const double bb = 2.0 * ((p - c) * std::conj(d)).real();
    const double cc = std::norm(p - c) - r * r;
    const double disc = bb * bb - 4.0 * aa * cc;
    if (disc <= 0.0) continue;
    const double sq = std::sqrt(disc);
    double s0 = (-bb - sq) / (2.0 * aa);
    double s1 = (-bb + sq) / (2.0 * aa);
    if (s1 <= 1e-12 || s0 >= 1.0 - 1e-12) continue;  // crossing outside the segment
    s0 = std::max(s0, 0.0);
    s1 = std::min(s1, 1.0);
    if (0.5 * (s0 + s1) >= 1.0 || std::abs(p + 0.5 * (s0 + s1) * d - c) >= r) continue;
    if (s0 < s_in) {
      s_in = s0;
      s_out = s1;
      hit = k;
    }
  }

  if (hit < 0) {
    out.push_back(PathPiece::segment(p, q));
    return;
  }

  const cplx c = discs[hit].center;
  const double r = discs[hit].radius;
  if (std::abs(p - c) < r * (1.0 - 1e-9) || std::abs(q - c) < r * (1.0 - 1e-9))
    throw NumericalError("path endpoint lies inside an exclusion disc");

  const cplx A = p + s_in * d;
  const cplx B = p + s_out * d;
  const double thA = std::arg(A - c);
  const double thB = std::arg(B - c);
  double sweep = thB - thA;
  while (sweep > pi) sweep -= 2.0 * pi;
  while (sweep < -pi) sweep += 2.0 * pi;

  std::vector<ExclusionDisc> others;
  for (int k = 0; k < static_cast<int>(discs.size()); ++k)
    if (k != hit) others.push_back(discs[k]);

  PathPiece candidate = PathPiece::arc(c, r, thA, sweep);
  if (!arc_clear(g, others, candidate, 1e-9 * g.diameter)) {
    const double other_sweep = sweep - std::copysign(2.0 * pi, sweep);
    candidate = PathPiece::arc(c, r, thA, other_sweep);
    if (!arc_clear(g, others, candidate, 1e-9 * g.diameter))
      throw NumericalError("no clear detour around an exclusion disc");
  }

  if (s_in > 1e-12) route_segment(g, others, p, A, out, depth + 1);
  out.push_back(candidate);
  if (s_out < 1.0 - 1e-12) route_segment(g, discs, B, q, out, depth + 1);
}

}  // namespace detail

// Resolves a path from one point to another that stays in the closed domain
// and outside the open exclusion discs.  Both endpoints may rest on the
// boundary.  An endpoint caught inside a protective disc is still reachable
// while it hugs the domain boundary: a radial piece walks it onto the disc
// rim and the rest of the route runs from there.  Endpoints inside a disc
// away from the boundary are genuine evaluation errors.
inline PathSpec resolve_path(const BoundaryGrid& g, cplx from, cplx to,
                             const std::vector<ExclusionDisc>& obstacles) {
  const auto escape = [&](cplx p) -> std::pair<int, cplx> {
    for (int k = 0; k < static_cast<int>(obstacles.size()); ++k) {
      const ExclusionDisc& d = obstacles[k];
      const double dist = std::abs(p - d.center);
      if (dist >= d.radius * (1.0 - 1e-9)) continue;
      if (g.min_boundary_distance(p) > g.max_spacing || dist < 1e-6 * d.radius)
        throw NumericalError("path endpoint lies inside an exclusion disc");
      const cplx cp = d.center + d.radius * (p - d.center) / dist;
      for (int j = 0; j < static_cast<int>(obstacles.size()); ++j) {
        if (j == k) continue;
        for (int s = 0; s <= 16; ++s)
          if (std::abs(p + (cp - p) * (s / 16.0) - obstacles[j].center) <
              obstacles[j].radius * (1.0 - 1e-9))
            throw NumericalError("no clear detour around an exclusion disc");
      }
      return {k, cp};
    }
    return {-1, p};
  };
  const auto [from_disc, start] = escape(from);
  const auto [to_disc, goal] = escape(to);

  PathSpec path;
  if (from_disc >= 0) path.pieces.push_back(PathPiece::segment(from, start));
  detail::route_segment(g, obstacles, start, goal, path.pieces, 0);
  if (to_disc >= 0) path.pieces.push_back(PathPiece::segment(goal, to));
  if (path.pieces.empty()) path.pieces.push_back(PathPiece::segment(from, to));

  // The router already avoids the discs; this sweep guards the property the
  // quadrature relies on, that the path never leaves the closed domain.
  const double slack = 1e-9 * g.diameter;
  for (const auto& piece : path.pieces) {
    for (int k = 0; k <= 64; ++k) {
      const cplx p = piece.at(k / 64.0);
      if (g.min_boundary_distance(p) < slack) continue;
      if (!g.contains(p)) throw NumericalError("integration path leaves the domain");
    }
  }
  if (std::abs(path.start() - from) > 1e-12 * g.diameter ||
      std::abs(path.end() - to) > 1e-12 * g.diameter)
    throw NumericalError("integration path endpoints drifted");
  return path;
}

// Integral of f(z) dz along the path.
inline cplx integrate_along_path(const PathSpec& path, const std::function<cplx(cplx)>& f,
                                 double tol = 1e-12) {
  cplx acc = 0.0;
  const double piece_tol = tol / std::max<std::size_t>(path.pieces.size(), 1);
  for (const auto& piece : path.pieces)
    acc += integrate([&](double s) { return f(piece.at(s)) * piece.vel(s); }, 0.0, 1.0,
                     piece_tol);
  return acc;
}

}  // namespace kernmap
