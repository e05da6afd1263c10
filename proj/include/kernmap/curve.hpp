#pragma once

// Parametrized analytic closed curves.  Supported shapes: circles, rotated
// ellipses, and finite Fourier sums z(t) = sum_k c_k e^{ikt}.

#include <cmath>
#include <utility>
#include <vector>

#include "kernmap/types.hpp"

namespace kernmap {

enum class CurveKind { circle, ellipse, fourier };
enum class CurveRole { inner, outer };

struct CurveSpec {
  CurveKind kind = CurveKind::circle;
  CurveRole role = CurveRole::inner;

  cplx center{};
  double radius = 1.0;

  double semi_major = 1.0;
  double semi_minor = 0.5;
  double rotation = 0.0;

  std::vector<cplx> coeffs;  // fourier: coeffs[j] multiplies e^{i (k_min + j) t}
  int k_min = 0;

  static CurveSpec make_circle(cplx c, double r, CurveRole role) {
    if (!(r > 0.0)) throw ConfigError("circle radius must be positive");
    CurveSpec s;
    s.kind = CurveKind::circle;
    s.role = role;
    s.center = c;
    s.radius = r;
    return s;
  }

  static CurveSpec make_ellipse(cplx c, double a, double b, double rot, CurveRole role) {
    if (!(a > 0.0) || !(b > 0.0)) throw ConfigError("ellipse semi-axes must be positive");
    CurveSpec s;
    s.kind = CurveKind::ellipse;
    s.role = role;
    s.center = c;
    s.semi_major = a;
    s.semi_minor = b;
    s.rotation = rot;
    return s;
  }

  static CurveSpec make_fourier(std::vector<cplx> coeffs, int k_min, CurveRole role) {
    if (coeffs.empty()) throw ConfigError("fourier curve needs at least one coefficient");
    CurveSpec s;
    s.kind = CurveKind::fourier;
    s.role = role;
    s.coeffs = std::move(coeffs);
    s.k_min = k_min;
    return s;
  }

  cplx point(double t) const {
    switch (kind) {
      case CurveKind::circle:
        return center + radius * std::exp(cplx(0.0, t));
      case CurveKind::ellipse:
        return center + std::exp(cplx(0.0, rotation)) *
                            cplx(semi_major * std::cos(t), semi_minor * std::sin(t));
      case CurveKind::fourier: {
        cplx acc = 0.0;
        for (std::size_t j = 0; j < coeffs.size(); ++j)
          acc += coeffs[j] * std::exp(cplx(0.0, (k_min + static_cast<int>(j)) * t));
        return acc;
      }
    }
    return {};
  }

  cplx velocity(double t) const {
    switch (kind) {
      case CurveKind::circle:
        return radius * iu * std::exp(cplx(0.0, t));
      case CurveKind::ellipse:
        return std::exp(cplx(0.0, rotation)) *
               cplx(-semi_major * std::sin(t), semi_minor * std::cos(t));
      case CurveKind::fourier: {
        cplx acc = 0.0;
        for (std::size_t j = 0; j < coeffs.size(); ++j) {
          const int k = k_min + static_cast<int>(j);
          acc += coeffs[j] * cplx(0.0, k) * std::exp(cplx(0.0, k * t));
        }
        return acc;
      }
    }
    return {};
  }

  cplx acceleration(double t) const {
    switch (kind) {
      case CurveKind::circle:
        return -radius * std::exp(cplx(0.0, t));
      case CurveKind::ellipse:
        return std::exp(cplx(0.0, rotation)) *
               cplx(-semi_major * std::cos(t), -semi_minor * std::sin(t));
      case CurveKind::fourier: {
        cplx acc = 0.0;
        for (std::size_t j = 0; j < coeffs.size(); ++j) {
          const int k = k_min + static_cast<int>(j);
          acc += coeffs[j] * cplx(static_cast<double>(-k) * k, 0.0) * std::exp(cplx(0.0, k * t));
        }
        return acc;
      }
    }
    return {};
  }
};

}  // namespace kernmap
