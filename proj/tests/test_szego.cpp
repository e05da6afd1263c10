#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "kernmap/oracle.hpp"
#include "kernmap/szego.hpp"
#include "support.hpp"

using namespace kernmap;

TEST_CASE("disc solve reproduces the closed forms") {
  const BoundaryGrid g = discretize(testsup::disc_spec(), 128);
  const SzegoSolver solver(g);
  const cplx w(0.3, 0.0);
  const KernelSet ks = solver.solve(w);
  double worst_s = 0.0, worst_l = 0.0;
  for (int i = 0; i < g.total(); ++i) {
    worst_s = std::max(worst_s, std::abs(ks.S[i] - disc_szego(g.z[i], w)));
    worst_l = std::max(worst_l, std::abs(ks.L[i] - disc_garabedian(g.z[i], w)));
  }
  CHECK(worst_s < 1e-12);
  CHECK(worst_l < 1e-12);
  CHECK(std::abs(ks.S_ww - disc_szego(w, w).real()) < 1e-12);
}

TEST_CASE("disc map is the expected disc automorphism") {
  const BoundaryGrid g = discretize(testsup::disc_spec(), 128);
  const SzegoSolver solver(g);
  const cplx a(0.3, 0.0);
  const AhlforsEvaluator f(g, solver.solve(a));
  for (const cplx z : {cplx(0.5, 0.2), cplx(-0.7, 0.1), cplx(0.0, -0.6)})
    CHECK(std::abs(f.value(z) - disc_mobius(z, a)) < 1e-11);
  CHECK(f.degree() == 1);
  CHECK(std::abs(ahlfors_boundary_root(g, f, 0) - 1.0) < 1e-9);
}

TEST_CASE("ring solve matches the boundary series") {
  const double q = 0.5;
  const BoundaryGrid g = discretize(testsup::annulus_spec(q), 256);
  const SzegoSolver solver(g);
  const cplx w(0.75, 0.0);
  const KernelSet ks = solver.solve(w);
  double worst = 0.0;
  for (int i = 0; i < g.total(); ++i)
    worst = std::max(worst, std::abs(ks.S[i] - testsup::annulus_szego_series(g.z[i], w, q)));
  CHECK(worst < 1e-9);
  const double sww = testsup::annulus_szego_series(w, w, q).real();
  CHECK(std::abs(ks.S_ww - sww) / sww < 1e-10);
}

TEST_CASE("interior kernel values come from the boundary data") {
  const double q = 0.5;
  const BoundaryGrid g = discretize(testsup::annulus_spec(q), 256);
  const SzegoSolver solver(g);
  const cplx w(0.75, 0.0);
  const KernelField field(g, solver.solve(w));
  for (const cplx z : {cplx(-0.6, 0.3), cplx(0.0, 0.88), cplx(0.53, -0.2)})
    CHECK(std::abs(field.szego(z) - testsup::annulus_szego_series(z, w, q)) < 1e-10);
}

TEST_CASE("second kernel integrates to its residue") {
  for (int m : {128, 256}) {
    const BoundaryGrid g = discretize(testsup::annulus_spec(0.5), m);
    const SzegoSolver solver(g);
    const KernelSet ks = solver.solve(cplx(0.72, 0.1));
    cplx acc = 0.0;
    for (int i = 0; i < g.total(); ++i) acc += ks.L[i] * g.wdz[i];
    CHECK(std::abs(acc - iu) < 1e-10);
  }
}

TEST_CASE("source too close to the boundary is rejected") {
  const BoundaryGrid g = discretize(testsup::disc_spec(), 128);
  const SzegoSolver solver(g);
  CHECK_THROWS_AS(solver.solve(cplx(0.999, 0.0)), NumericalError);
  CHECK_THROWS_AS(solver.solve(cplx(1.5, 0.0)), ConfigError);
}

TEST_CASE("ring kernel has one zero, found accurately") {
  const double q = 0.5;
  const BoundaryGrid g = discretize(testsup::annulus_spec(q), 256);
  const SzegoSolver solver(g);
  const cplx w(0.75, 0.0);
  const KernelField field(g, solver.solve(w));
  const std::vector<cplx> zeros = szego_zeros(g, field);
  REQUIRE(zeros.size() == 1);
  // The located zero must sit inside the ring, off the source axis side,
  // and the independent series must vanish there.
  CHECK(g.contains(zeros[0]));
  CHECK(std::abs(testsup::annulus_szego_series(zeros[0], w, q)) < 1e-9);
}

TEST_CASE("ring map winds twice and has two branch points") {
  const double q = 0.5;
  const BoundaryGrid g = discretize(testsup::annulus_spec(q), 256);
  const SzegoSolver solver(g);
  const AhlforsEvaluator f(g, solver.solve(cplx(0.72, 0.0)));
  CHECK(f.degree() == 2);
  double worst = 0.0;
  for (const cplx& v : f.boundary()) worst = std::max(worst, std::abs(std::abs(v) - 1.0));
  CHECK(worst < 1e-9);
  const auto branch = branch_locus(g, f);
  int total = 0;
  for (const auto& b : branch) {
    total += b.multiplicity;
    CHECK(g.contains(b.point));
  }
  CHECK(total == 2);
}

TEST_CASE("boundary roots of the ring map exist on both curves") {
  const double q = 0.5;
  const BoundaryGrid g = discretize(testsup::annulus_spec(q), 256);
  const SzegoSolver solver(g);
  const AhlforsEvaluator f(g, solver.solve(cplx(0.72, 0.0)));
  for (int c = 0; c < g.n; ++c) {
    const cplx root = ahlfors_boundary_root(g, f, c);
    const double r = std::abs(root);
    CHECK(std::abs(r - (c == 0 ? q : 1.0)) < 1e-9);
    CHECK(std::abs(f.value(root) - 1.0) < 1e-8);
  }
}
