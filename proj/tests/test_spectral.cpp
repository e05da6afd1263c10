#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "kernmap/spectral.hpp"
#include "kernmap/types.hpp"

using namespace kernmap;

namespace {

std::vector<cplx> sample(int m, const std::function<cplx(double)>& f) {
  std::vector<cplx> out(m);
  for (int i = 0; i < m; ++i) out[i] = f(2.0 * pi * i / m);
  return out;
}

}  // namespace

TEST_CASE("coefficients of a pure mode land in the right slot") {
  const int m = 32;
  for (int k : {-3, 0, 1, 5}) {
    const auto c = fourier_coeffs(sample(m, [&](double t) { return std::exp(iu * (k * t)); }));
    for (int j = 0; j < m; ++j) {
      const int mode = j - m / 2;
      const double expect = (mode == k) ? 1.0 : 0.0;
      CHECK(std::abs(c[j] - expect) < 1e-13);
    }
  }
}

TEST_CASE("spectral derivative matches the analytic derivative") {
  const int m = 64;
  const auto f = sample(m, [](double t) { return std::exp(std::sin(t)); });
  const auto df = spectral_derivative(f);
  for (int i = 0; i < m; ++i) {
    const double t = 2.0 * pi * i / m;
    const cplx expect = std::cos(t) * std::exp(std::sin(t));
    CHECK(std::abs(df[i] - expect) < 1e-11);
  }
}

TEST_CASE("trigonometric interpolation reproduces samples and midpoints") {
  const int m = 64;
  auto fn = [](double t) { return std::exp(iu * t) + 0.3 * std::exp(iu * (4.0 * t)) + cplx(0.5); };
  const auto f = sample(m, fn);
  TrigInterp interp(f);
  for (int i = 0; i < m; ++i) {
    const double t = 2.0 * pi * i / m;
    CHECK(std::abs(interp(t) - f[i]) < 1e-12);
    CHECK(std::abs(interp(t + pi / m) - fn(t + pi / m)) < 1e-12);
  }
}

TEST_CASE("derivative of a band limited signal is exact") {
  const int m = 32;
  auto fn = [](double t) { return std::exp(iu * (3.0 * t)); };
  const auto df = spectral_derivative(sample(m, fn));
  for (int i = 0; i < m; ++i) {
    const double t = 2.0 * pi * i / m;
    CHECK(std::abs(df[i] - 3.0 * iu * fn(t)) < 1e-13);
  }
}
