#pragma once

#include <string>

#include "elrod/rodsynth.hpp"

namespace elrod::closure {

using paramspace::DiskPoint;
using rodsynth::RodCurve;

// A target torus-knot closure: per-period advance 2 pi m / n, closing after
// n periods.
struct KnotSpec {
  int m = 0;
  int n = 1;
  double delta_theta_target = 0.0;
  int periods_to_close = 1;

  // Validates gcd(|m|,|n|) = 1 and |m/n| in (0,1).
  static KnotSpec make(int m, int n);
};

enum class Quadrant { II, IV };

struct KnotClass {
  int m = 0;
  int n = 0;
  bool embedded = false;
  bool multiple_cover = false;  // winding and periods share a factor
  std::string name;
};

struct ClosedRod {
  DiskPoint point;
  KnotSpec spec;
  RodCurve curve;
  KnotClass knot;
  bool embedded = false;
};

// Bisection in p along the fixed-phi ray for delta_theta = target.
// Throws SolveError with the bracketing values when unattainable.
DiskPoint solve_on_ray(double phi, double target);

ClosedRod solve_knot(const KnotSpec& spec, Quadrant quadrant);
// Quadrant II when m/n > 0, IV when m/n < 0.
ClosedRod solve_knot(const KnotSpec& spec);

// The unique closed constant-torsion rod of type (k,n); requires coprime
// k, n with 0 < |k/n| < 1/2.
ClosedRod solve_constant_torsion_knot(int k, int n);

// Winding counts from the unwrapped theta samples: m from total advance
// over 2 pi, n from the period count. Classification is withheld (name only)
// when the curve is not embedded. Throws on curves that do not close.
KnotClass knot_classify(const ClosedRod& rod);

}  // namespace elrod::closure
