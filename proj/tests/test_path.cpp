#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "kernmap/path.hpp"
#include "support.hpp"

using namespace kernmap;

TEST_CASE("free segment routes straight") {
  const BoundaryGrid g = discretize(testsup::disc_spec(), 64);
  const PathSpec p = resolve_path(g, cplx(-0.5, 0.0), cplx(0.5, 0.3), {});
  REQUIRE(p.pieces.size() == 1);
  CHECK(p.pieces[0].kind == PathPiece::Kind::segment);
  CHECK(std::abs(p.start() - cplx(-0.5, 0.0)) < 1e-12);
  CHECK(std::abs(p.end() - cplx(0.5, 0.3)) < 1e-12);
}

TEST_CASE("blocked segment detours around the disc") {
  const BoundaryGrid g = discretize(testsup::disc_spec(), 64);
  const ExclusionDisc hole{cplx(0.0, 0.0), 0.2};
  const PathSpec p = resolve_path(g, cplx(-0.6, 0.0), cplx(0.6, 0.0), {hole});
  REQUIRE(p.pieces.size() >= 2);
  for (const PathPiece& piece : p.pieces)
    for (int k = 0; k <= 32; ++k)
      CHECK(std::abs(piece.at(k / 32.0)) > 0.2 * (1.0 - 1e-6));
  CHECK(std::abs(p.start() - cplx(-0.6, 0.0)) < 1e-12);
  CHECK(std::abs(p.end() - cplx(0.6, 0.0)) < 1e-12);
}

TEST_CASE("endpoint buried in an exclusion disc is a hard error") {
  const BoundaryGrid g = discretize(testsup::disc_spec(), 64);
  const ExclusionDisc hole{cplx(0.0, 0.0), 0.2};
  CHECK_THROWS_AS(resolve_path(g, cplx(0.05, 0.0), cplx(0.6, 0.0), {hole}), NumericalError);
}

TEST_CASE("path integral of an entire function is path independent") {
  const BoundaryGrid g = discretize(testsup::disc_spec(), 64);
  auto f = [](cplx z) { return z * z; };
  auto anti = [](cplx z) { return z * z * z / 3.0; };
  const cplx a(-0.6, -0.1), b(0.55, 0.35);

  const PathSpec direct = resolve_path(g, a, b, {});
  const cplx v1 = integrate_along_path(direct, f, 1e-12);
  const PathSpec detour = resolve_path(g, a, b, {ExclusionDisc{cplx(0.0, 0.1), 0.25}});
  const cplx v2 = integrate_along_path(detour, f, 1e-12);

  CHECK(std::abs(v1 - (anti(b) - anti(a))) < 1e-12);
  CHECK(std::abs(v2 - (anti(b) - anti(a))) < 1e-12);
}

TEST_CASE("pole sitting on the path makes the quadrature fail loudly") {
  const BoundaryGrid g = discretize(testsup::disc_spec(), 64);
  const PathSpec p = resolve_path(g, cplx(-0.5, 0.0), cplx(0.5, 0.0), {});
  // The pole is kept away from every bisection midpoint so the estimates
  // cannot cancel by symmetry.
  CHECK_THROWS_AS(integrate_along_path(p, [](cplx z) { return 1.0 / (z - 0.1); }, 1e-12),
                  NumericalError);
}

TEST_CASE("arc pieces evaluate consistently") {
  const PathPiece arc = PathPiece::arc(cplx(0.0, 0.0), 0.5, 0.0, pi / 2.0);
  CHECK(std::abs(arc.at(0.0) - cplx(0.5, 0.0)) < 1e-14);
  CHECK(std::abs(arc.at(1.0) - cplx(0.0, 0.5)) < 1e-14);
  // Velocity is d/ds of the point, one piece parametrized over [0, 1].
  const double h = 1e-6;
  const cplx fd = (arc.at(0.5 + h) - arc.at(0.5 - h)) / (2.0 * h);
  CHECK(std::abs(arc.vel(0.5) - fd) < 1e-7);
}
