#pragma once

#include <utility>
#include <vector>

#include "elrod/specfun.hpp"

namespace elrod::paramspace {

// A(p) = 2E(p)/K(p) - 1. Monotone decreasing, A(0) = 1, A(1) = -1.
double A_of_p(double p);

// Root of A(p) = 0; beyond it the closure condition has no solution.
// Cached after the first call.
double find_p_max();

// Inverse of A_of_p on (0, p_max) for A in (0, 1).
double p_from_A(double A);

// A point of the moduli disk, carrying both charts.
// X = sqrt(A(p)) cos(phi), Y = sqrt(A(p)) sin(phi); X^2 + Y^2 = A(p).
struct DiskPoint {
  double X = 0.0;
  double Y = 0.0;
  double p = 0.0;
  double phi = 0.0;  // in [0, 2pi)

  static DiskPoint from_xy(double X, double Y);
  static DiskPoint from_polar(double p, double phi);
};

// Every derived scalar the rod formulae need, under lambda3 = 1, kappa0 = 1.
struct RodConstants {
  double p = 0.0;
  double p_prime = 0.0;
  double X = 0.0;
  double Y = 0.0;
  double A = 0.0;
  double w = 0.0;        // sqrt(Y^2 + p^2)
  double Z = 0.0;        // Y sqrt(p'^2 - Y^2) = c w^2
  double c = 0.0;
  double lambda1 = 0.0;  // 1/2 + (A-1)/(4 w^2)
  double lambda2 = 0.0;  // X / w
  double mu = 0.0;       // > 0
  double U = 0.0;        // a mu w
  double a = 0.0;
  double N = 0.0;
  double M = 0.0;        // p^2 / (p^2 + A - U^2), in (p^2, 1]
  double V = 0.0;
  double xi = 0.0;       // analytic branch, cos(xi) = V/p'
  double xi_hat = 0.0;   // principal branch in [0, pi/2]
};

RodConstants derive_constants(const DiskPoint& pt);

enum class LocusKind {
  ElasticCurve,     // X = 0
  ConstantTorsion,  // Y = 0
  Kida,             // a = 0 (pure rotation under the LIE)
  SelfIntersecting, // V = 0 (r_min = 0)
  Generic
};

const char* locus_name(LocusKind k);

struct LocusTag {
  LocusKind kind = LocusKind::Generic;
  double residual = 0.0;
  // All loci within tolerance, smallest residual first.
  std::vector<std::pair<LocusKind, double>> matches;
};

LocusTag classify_locus(const DiskPoint& pt, double tol = 1e-9);

// sin^2(phi) along the Kida locus at modulus p.
double kida_sin2_phi(double p);
// First-quadrant Kida branch (third quadrant is phi + pi).
double kida_phi(double p);
// Second-quadrant self-intersection branch (fourth quadrant is phi + pi).
double selfint_phi(double p);

// sin^2(phi) on the Kida locus evaluated at p = 1e-4 (limit 2/3 as p -> 0).
double kida_small_p_limit();

// Limiting azimuthal advance on the boundary circle: 2 pi sin(phi) in
// quadrants II and IV, 0 in quadrants I and III. Axis points are excluded.
double boundary_delta_theta(double phi);

struct LocusSample {
  double p, phi, X, Y;
};

// Sampled locus curve over p in (0, p_max), densified where the curve bends.
std::vector<LocusSample> sample_locus(LocusKind kind, int n_samples);

}  // namespace elrod::paramspace
