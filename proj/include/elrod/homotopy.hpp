#pragma once

#include <utility>
#include <vector>

#include "elrod/rodsynth.hpp"

namespace elrod::homotopy {

using paramspace::DiskPoint;
using paramspace::LocusKind;

struct Landmark {
  LocusKind kind = LocusKind::Generic;
  DiskPoint point;
  double residual = 0.0;  // defining-equation residual at the point
};

// A level curve of the smooth per-period advance, crossing the disk from
// the fourth-quadrant edge to the second-quadrant edge. Each chain point
// yields a closed rod over k+n periods; the family deforms a k-covered
// circle into an n-covered circle.
struct HomotopyFamily {
  int k = 0;
  int n = 0;
  double level = 0.0;  // -2 pi k / (k+n), the traced smooth advance
  std::vector<DiskPoint> chain;
  std::vector<Landmark> landmarks;
  bool rotated = false;  // built via the 180-degree rotation (k > n)
  std::pair<int, int> endpoint_limits{0, 0};  // circle cover counts
};

HomotopyFamily trace_level(int k, int n, double step = 1e-3);

// Scans the chain for the elastic, constant-torsion, self-intersecting and
// pure-rotation crossings; throws SolveError with a report unless each
// occurs exactly once.
std::vector<Landmark> landmark_points(const HomotopyFamily& fam);

// Analytic partial derivatives in the (p, U) coordinates: the smooth
// advance with respect to U at fixed p, and U with respect to phi at
// fixed p. Undefined on the V = 0 locus.
struct Partials {
  double d_dU = 0.0;
  double dU_dphi = 0.0;
};
Partials partials_delta_theta(const DiskPoint& pt);

// Physical advance at a chain point: the traced level, plus 2 pi past the
// V = 0 crossing.
double physical_delta_theta(const DiskPoint& pt);

}  // namespace elrod::homotopy
