#pragma once

#include <array>
#include <vector>

#include "elrod/paramspace.hpp"

namespace elrod::rodsynth {

using paramspace::DiskPoint;
using paramspace::RodConstants;

// One centerline sample in the natural parameter t (arclength s = 2 w t).
struct CurveSample {
  double t = 0.0;
  double r = 0.0, theta = 0.0, z = 0.0;  // cylindrical, axis along J
  double x = 0.0, y = 0.0;               // x = r cos(theta), y = r sin(theta)
  double kappa = 0.0, tau = 0.0;
  std::array<double, 3> J_vec{};         // conserved field at the sample
};

struct RodCurve {
  std::vector<CurveSample> samples;  // strictly increasing in t
  int periods = 0;                   // count of 2K-segments
  RodConstants constants;
  double delta_theta = 0.0;          // per-period azimuthal advance
  double closure_gap = 0.0;          // first-to-last distance
  bool used_quadrature_fallback = false;
};

struct SynthOptions {
  bool force_quadrature = false;  // integrate theta_t instead of closed form
};

// kappa = sqrt(1 - (p^2/w^2) sn^2 t), tau = (lambda2 + c/kappa^2)/2.
std::pair<double, double> curvature_torsion(double t, const RodConstants& k);

// z(t) = Theta'(t)/Theta(t) / (mu w); odd, 2K-periodic.
double z_of_t(double t, const RodConstants& k);

// d theta/dt = U + N/(1 - M sn^2 t).
double theta_rate(double t, const RodConstants& k);

// Continuously unwrapped theta with theta(0) = 0.
double theta_of_t(double t, const RodConstants& k);

// Per-period advance: smooth branch 2KU - 2(E-K)F(xi,p') - 2K E(xi,p'),
// physical value adds 2 pi when cos(xi) < 0.
double delta_theta_smooth(const RodConstants& k);
double delta_theta(const RodConstants& k);

RodCurve synthesize(const DiskPoint& pt, int n_periods,
                    int samples_per_period = 256,
                    const SynthOptions& opts = {});

// Residual report for the two first integrals and the conserved field J.
// Reports, never throws.
struct FirstIntegralReport {
  double max_first_integral_1 = 0.0;  // kappa^2 (2 tau - lambda2) - c
  double max_first_integral_2 = 0.0;  // kappa_s^2 + ... - mu^2
  double max_J_length_dev = 0.0;      // | |J| - mu | / mu
  double max_J_variation = 0.0;       // relative to mu, across samples
  double a_mu_identity = 0.0;         // a mu^2 - (c/2 - lambda1 lambda2)
};
FirstIntegralReport verify_first_integrals(const RodCurve& curve);

struct EmbeddingReport {
  bool embedded = false;
  double r_min = 0.0;          // from samples
  double r_min_formula = 0.0;  // sqrt(A - U^2)/(mu w)
  bool simple_profile = false; // (r,z) traces a simple closed curve
};
EmbeddingReport torus_embedding_check(const RodCurve& curve,
                                      double tol = 1e-8);

}  // namespace elrod::rodsynth
