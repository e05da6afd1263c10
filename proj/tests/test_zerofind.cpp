#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "kernmap/zerofind.hpp"
#include "support.hpp"

using namespace kernmap;

namespace {

const cplx r1(0.3, 0.0);
const cplx r2(-0.4, 0.2);

cplx poly(cplx z) { return (z - r1) * (z - r2); }
cplx poly_d(cplx z) { return 2.0 * z - r1 - r2; }

cplx dbl(cplx z) { return (z - r1) * (z - r1) * (z - r2); }
cplx dbl_d(cplx z) { return (z - r1) * (2.0 * (z - r2) + (z - r1)); }

}  // namespace

TEST_CASE("boundary winding counts interior zeros") {
  const BoundaryGrid g = discretize(testsup::disc_spec(), 64);
  std::vector<cplx> f(g.total()), fp(g.total());
  for (int i = 0; i < g.total(); ++i) {
    f[i] = poly(g.z[i]);
    fp[i] = poly_d(g.z[i]);
  }
  CHECK(boundary_zero_count(g, f, fp) == 2);
}

TEST_CASE("counting respects the ring topology") {
  const BoundaryGrid g = discretize(testsup::annulus_spec(0.5), 64);
  // One zero in the ring, one inside the hole; only the first is counted.
  std::vector<cplx> f(g.total()), fp(g.total());
  for (int i = 0; i < g.total(); ++i) {
    f[i] = (g.z[i] - cplx(0.75, 0.0)) * (g.z[i] - cplx(0.1, 0.0));
    fp[i] = 2.0 * g.z[i] - cplx(0.85, 0.0);
  }
  CHECK(boundary_zero_count(g, f, fp) == 1);
}

TEST_CASE("simple zeros are located and polished") {
  const BoundaryGrid g = discretize(testsup::disc_spec(), 128);
  const auto zeros = locate_zeros(g, poly, poly_d, 2);
  REQUIRE(zeros.size() == 2);
  for (const auto& z : zeros) {
    CHECK(z.multiplicity == 1);
    const double d = std::min(std::abs(z.point - r1), std::abs(z.point - r2));
    CHECK(d < 1e-10);
  }
}

TEST_CASE("a double zero is reported once with multiplicity two") {
  const BoundaryGrid g = discretize(testsup::disc_spec(), 128);
  const auto zeros = locate_zeros(g, dbl, dbl_d, 3);
  REQUIRE(zeros.size() == 2);
  int total = 0;
  for (const auto& z : zeros) {
    total += z.multiplicity;
    if (z.multiplicity == 2) CHECK(std::abs(z.point - r1) < 1e-6);
    if (z.multiplicity == 1) CHECK(std::abs(z.point - r2) < 1e-10);
  }
  CHECK(total == 3);
}

TEST_CASE("an expectation mismatch is a hard error") {
  const BoundaryGrid g = discretize(testsup::disc_spec(), 128);
  CHECK_THROWS_AS(locate_zeros(g, poly, poly_d, 3), NumericalError);
}
