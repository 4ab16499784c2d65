#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "elrod/closure.hpp"

using namespace elrod;
using namespace elrod::paramspace;
using namespace elrod::closure;

namespace {
constexpr double kPi = numeric::kPi;

double advance_at(const DiskPoint& pt) {
  return rodsynth::delta_theta(derive_constants(pt));
}

double kida_advance(double p) {
  return advance_at(DiskPoint::from_polar(p, kida_phi(p)));
}
}  // namespace

TEST_CASE("knot spec validation") {
  KnotSpec s = KnotSpec::make(2, 3);
  CHECK(s.delta_theta_target == doctest::Approx(4 * kPi / 3).epsilon(1e-15));
  CHECK(s.periods_to_close == 3);
  // sign normalization keeps n positive
  KnotSpec neg = KnotSpec::make(1, -3);
  CHECK(neg.m == -1);
  CHECK(neg.n == 3);
  CHECK_THROWS_AS(KnotSpec::make(2, 4), DomainError);   // not coprime
  CHECK_THROWS_AS(KnotSpec::make(3, 3), DomainError);   // |m/n| = 1
  CHECK_THROWS_AS(KnotSpec::make(5, 3), DomainError);   // |m/n| > 1
  CHECK_THROWS_AS(KnotSpec::make(0, 3), DomainError);   // m = 0
  CHECK_THROWS_AS(KnotSpec::make(1, 0), DomainError);   // n = 0
}

TEST_CASE("solve_on_ray") {
  // bracketed interior target on a second-quadrant ray
  DiskPoint pt = solve_on_ray(2.6, 3.8);
  CHECK(std::abs(advance_at(pt) - 3.8) < 1e-10);
  CHECK(pt.phi == doctest::Approx(2.6).epsilon(1e-12));

  // the vertical axis spans (-pi, 0)
  DiskPoint el = solve_on_ray(kPi / 2, -2 * kPi / 5);
  CHECK(std::abs(advance_at(el) + 2 * kPi / 5) < 1e-10);
  CHECK(std::abs(el.X) < 1e-12);

  // zero is skipped in the second-quadrant interior (the advance jumps by
  // 2 pi across the self-intersection locus without passing through 0)
  CHECK_THROWS_AS(solve_on_ray(2.2, 0.0), SolveError);
  // far outside the attained range
  CHECK_THROWS_AS(solve_on_ray(2.6, 7.0), SolveError);
}

TEST_CASE("solve_knot basic families") {
  ClosedRod half = solve_knot(KnotSpec::make(1, 2));
  CHECK(std::abs(advance_at(half.point) - kPi) < 1e-10);
  CHECK(half.curve.periods == 2);
  CHECK(half.curve.closure_gap < 1e-6);
  CHECK(half.embedded);
  CHECK(half.knot.m == 1);
  CHECK(half.knot.n == 2);
  CHECK(half.point.phi > kPi / 2);
  CHECK(half.point.phi < kPi);

  ClosedRod trefoil = solve_knot(KnotSpec::make(2, 3));
  CHECK(std::abs(advance_at(trefoil.point) - 4 * kPi / 3) < 1e-10);
  CHECK(trefoil.embedded);
  CHECK(trefoil.knot.m == 2);
  CHECK(trefoil.knot.n == 3);
  CHECK(trefoil.knot.name == "(2,3) torus knot");
  CHECK_FALSE(trefoil.knot.multiple_cover);
  CHECK(trefoil.curve.closure_gap < 1e-6);

  ClosedRod third = solve_knot(KnotSpec::make(1, 3));
  CHECK(third.point.phi > kPi / 2);
  CHECK(third.point.phi < kPi);
  CHECK(third.knot.name == "unknot");

  // negative advance solves in the fourth quadrant by default
  ClosedRod negative = solve_knot(KnotSpec::make(-1, 2));
  CHECK(negative.point.phi > 3 * kPi / 2);
  CHECK(std::abs(advance_at(negative.point) + kPi) < 1e-10);
}

TEST_CASE("solved rods are stable under re-sampling and chart round-trip") {
  ClosedRod rod = solve_knot(KnotSpec::make(2, 3));
  rodsynth::RodCurve finer = rodsynth::synthesize(rod.point, 3, 512);
  CHECK(std::abs(finer.closure_gap - rod.curve.closure_gap) < 1e-8);
  DiskPoint back = DiskPoint::from_xy(rod.point.X, rod.point.Y);
  CHECK(std::abs(advance_at(back) - advance_at(rod.point)) < 1e-10);
}

TEST_CASE("constant-torsion closures") {
  ClosedRod rod = solve_constant_torsion_knot(1, 3);
  CHECK(std::abs(advance_at(rod.point) - 2 * kPi / 3) < 1e-10);
  CHECK(std::abs(rod.point.Y) < 1e-12);
  CHECK(rod.curve.closure_gap < 1e-6);
  double tau0 = rod.curve.constants.lambda2 / 2;
  for (const auto& s : rod.curve.samples) {
    CHECK(std::abs(s.tau - tau0) < 1e-10);
  }

  ClosedRod wide = solve_constant_torsion_knot(2, 5);
  CHECK(wide.knot.name == "(2,5) torus knot");
  CHECK(wide.embedded);

  CHECK_THROWS_AS(solve_constant_torsion_knot(1, 2), DomainError);
  CHECK_THROWS_AS(solve_constant_torsion_knot(2, 3), DomainError);
  CHECK_THROWS_AS(solve_constant_torsion_knot(2, 4), DomainError);
  CHECK_THROWS_AS(solve_constant_torsion_knot(0, 3), DomainError);

  // axis limits of the advance near the disk center
  double pm = find_p_max();
  CHECK(advance_at(DiskPoint::from_polar(pm - 1e-7, 0.0)) ==
        doctest::Approx(-kPi).epsilon(1e-2));
  CHECK(advance_at(DiskPoint::from_polar(pm - 1e-7, kPi)) ==
        doctest::Approx(kPi).epsilon(1e-2));
}

TEST_CASE("classification refuses non-closed input") {
  ClosedRod fake;
  fake.point = DiskPoint::from_polar(0.5, 0.8);
  fake.spec = KnotSpec::make(1, 2);
  fake.curve = rodsynth::synthesize(fake.point, 1, 64);
  CHECK(fake.curve.closure_gap > 1e-5);
  CHECK_THROWS_AS(knot_classify(fake), DomainError);
}

TEST_CASE("closed rods on the pure-rotation locus are loosely wound") {
  // per-period advance stays in (-pi, 0) along the locus, so any closed rod
  // there winds more than twice around the waist per axis circuit
  struct Target {
    int m, n;
  };
  for (Target tg : {Target{-1, 3}, Target{-1, 5}, Target{-1, 7}, Target{-2, 5},
                    Target{-3, 7}}) {
    double want = 2 * kPi * tg.m / tg.n;
    double p = numeric::find_root(
        [&](double p_) { return kida_advance(p_) - want; }, 0.01,
        find_p_max() - 1e-7, 1e-13, 1e-15);
    DiskPoint pt = DiskPoint::from_polar(p, kida_phi(p));
    CHECK(std::abs(derive_constants(pt).U) < 1e-9);
    ClosedRod rod;
    rod.point = pt;
    rod.spec = KnotSpec::make(tg.m, tg.n);
    rod.curve = rodsynth::synthesize(pt, tg.n, 256);
    rod.knot = knot_classify(rod);
    CHECK(rod.knot.embedded);
    CHECK(rod.knot.m == tg.m);
    CHECK(rod.knot.n == tg.n);
    CHECK(rod.knot.n > 2 * std::abs(rod.knot.m));
  }
}
