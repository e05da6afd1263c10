#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "kernmap/oracle.hpp"
#include "kernmap/path.hpp"
#include "support.hpp"

using namespace kernmap;

TEST_CASE("disc kernels satisfy the boundary pairing") {
  // On |z| = 1 the two kernels differ by the rotation i conj(S T).
  for (double t : {0.3, 1.7, 4.4}) {
    const cplx z = std::exp(iu * t);
    const cplx T = iu * z;
    const cplx w(0.3, -0.2);
    const cplx lhs = disc_garabedian(z, w);
    const cplx rhs = iu * std::conj(disc_szego(z, w)) * std::conj(T);
    CHECK(std::abs(lhs - rhs) < 1e-14);
  }
}

TEST_CASE("disc Green gradient matches finite differences") {
  const cplx w(0.25, 0.35);
  const double h = 1e-6;
  for (const cplx z : {cplx(-0.3, 0.1), cplx(0.5, -0.4)}) {
    const double gx = (disc_green(z + h, w) - disc_green(z - h, w)) / (2.0 * h);
    const double gy = (disc_green(z + iu * h, w) - disc_green(z - iu * h, w)) / (2.0 * h);
    CHECK(std::abs(disc_green_dz(z, w) - 0.5 * cplx(gx, -gy)) < 1e-8);
  }
}

TEST_CASE("disc path reconstruction recovers the Green function") {
  const BoundaryGrid g = discretize(testsup::disc_spec(), 64);
  const cplx w(0.3, 0.0);
  // Start on the rim, where G vanishes, and walk inward.
  for (const cplx z : {cplx(-0.4, 0.2), cplx(0.1, -0.55), cplx(0.62, 0.3)}) {
    const PathSpec p = resolve_path(g, cplx(-1.0, 0.0), z, {ExclusionDisc{w, 0.05}});
    CHECK(std::abs(disc_alpha_path(w, p) - disc_green(z, w)) < 1e-9);
  }
}

TEST_CASE("ring Green function vanishes on both rims and is symmetric") {
  const double q = 0.5;
  const cplx w(0.75, 0.1);
  for (double t : {0.0, 1.3, 3.9}) {
    CHECK(std::abs(annulus_green(std::exp(iu * t), w, q)) < 1e-12);
    CHECK(std::abs(annulus_green(q * std::exp(iu * t), w, q)) < 1e-12);
  }
  for (const cplx z : {cplx(-0.6, 0.2), cplx(0.0, 0.8), cplx(0.55, -0.5)})
    CHECK(std::abs(annulus_green(z, w, q) - annulus_green(w, z, q)) < 1e-12);
}

TEST_CASE("ring Green gradient matches finite differences") {
  const double q = 0.5;
  const cplx w(0.75, 0.1);
  const double h = 1e-6;
  for (const cplx z : {cplx(-0.6, 0.2), cplx(0.0, -0.8)}) {
    const double gx = (annulus_green(z + h, w, q) - annulus_green(z - h, w, q)) / (2.0 * h);
    const double gy =
        (annulus_green(z + iu * h, w, q) - annulus_green(z - iu * h, w, q)) / (2.0 * h);
    CHECK(std::abs(annulus_green_dz(z, w, q) - 0.5 * cplx(gx, -gy)) < 1e-8);
  }
}

TEST_CASE("ring Green function is positive inside") {
  const double q = 0.5;
  const cplx w(0.75, 0.0);
  for (const cplx z : {cplx(-0.7, 0.0), cplx(0.0, 0.6), cplx(0.9, 0.0), cplx(0.55, 0.0)})
    CHECK(annulus_green(z, w, q) > 0.0);
}

TEST_CASE("harmonic measure of the inner rim interpolates 1 to 0") {
  const double q = 0.5;
  CHECK(std::abs(annulus_harmonic(cplx(q, 0.0), q) - 1.0) < 1e-12);
  CHECK(std::abs(annulus_harmonic(cplx(0.0, 1.0), q)) < 1e-12);
  const double v = annulus_harmonic(cplx(0.75, 0.0), q);
  CHECK(std::abs(v - std::log(0.75) / std::log(0.5)) < 1e-14);
}

TEST_CASE("ring modulus is validated") {
  CHECK_THROWS_AS(annulus_green(cplx(0.7, 0.0), cplx(0.6, 0.0), 0.95), ConfigError);
  CHECK_THROWS_AS(annulus_green(cplx(0.7, 0.0), cplx(0.6, 0.0), -0.1), ConfigError);
}
