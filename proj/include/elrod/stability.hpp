#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "elrod/rodsynth.hpp"

namespace elrod::stability {

using specfun::Modulus;

// Material data of a uniform symmetric Kirchhoff rod: bending stiffness
// alpha, twisting stiffness beta, constant twist rate m, length L, and the
// prescribed frame twist. They satisfy L m = delta_psi + integral of tau.
struct RodMaterial {
  double alpha = 1.0;
  double beta = 1.0;
  double m = 0.0;
  double L = 0.0;
  double delta_psi = 0.0;
};

// m is fixed by the multiplier ratio: m = alpha lambda2 / (2 beta);
// delta_psi then follows from the twist balance. beta = 0 leaves m
// undetermined (pure bending energy) and is rejected.
RodMaterial rod_from_curve(const rodsynth::RodCurve& curve, double alpha,
                           double beta);

enum class Subject { Circle, FigureEight };
enum class Verdict { Stable, Unstable, Critical };

struct StabilityReport {
  Subject subject = Subject::Circle;
  Verdict verdict = Verdict::Stable;
  double threshold = 0.0;            // compared quantity's critical value
  int first_indefinite_mode = 0;     // circle: lowest Fourier mode, 0 if none
  std::map<std::string, double> computed_quantities;
};

const char* verdict_name(Verdict v);

// Stable iff |m| < sqrt(3) 2 pi alpha / (L beta); mode n is indefinite iff
// (alpha kappa)^2 (n^2 - 1) < beta^2 m^2 with kappa = 2 pi / L.
StabilityReport circle_stability(double alpha, double beta, double m,
                                 double L);

// y'' = (n(n+1) p^2 sn^2 t - h) y with its low periodic eigenpairs.
struct LameProblem {
  int n_order = 1;
  double p = 0.0;
  double h = 0.0;
  // (eigenfunction id, h value) for the lowest simple eigenvalues
  std::vector<std::pair<std::string, double>> eigen_table;
};
LameProblem lame_problem(int n_order, const Modulus& m, double h = 0.0);

// Modulus of the closed planar figure-eight: the root of 2E = K.
Modulus figure_eight_modulus();

// Non-periodic companion of y2 = sn dn for the n = 2 problem at h = 1+4p^2,
// by reduction of order; y1(0) = 1, y1'(0) = 0, Wronskian(y1, y2) = 1.
double lame_second_solution(double t, const Modulus& m);
double lame_second_solution_deriv(double t, const Modulus& m);

// Periodic solution of L nu = H cn t * (integral of nu cn), normalized by
// the inhomogeneity; H is strictly increasing in h.
struct HSolution {
  double h = 0.0;
  double H = 0.0;
  double c1 = 0.0;                 // variation-of-parameters constant
  double integral_nu_cn = 0.0;     // = 1/H away from the H = 0 branch
  double integral_nu_sq = 0.0;     // = -d(1/H)/dh
  std::vector<double> t;           // sample grid over [0, 4K]
  std::vector<double> nu;
};
HSolution solve_H_of_h(double h, const Modulus& m);

// Least eigenvalue above the admissible interval (located by a shooting
// scan); solve_H_of_h rejects h at or beyond it.
double h_interval_upper(const Modulus& m);

// Untwisted rod on the figure eight: stable iff beta/alpha exceeds the
// critical ratio H(1+4p^2) K / p^2, which evaluates to 2.
StabilityReport figure_eight_stability(double alpha, double beta);

// Periodicity integrals of the normal component: for mu = dn t the first
// vanishes and the second does not (no periodic field exists); for
// mu = cn t both vanish.
struct MuBranchReport {
  double dn_first = 0.0;   // integral of dn * sn dn
  double dn_second = 0.0;  // integral of dn * (1 - 2 p^2 sn^2)
  double cn_first = 0.0;
  double cn_second = 0.0;
};
MuBranchReport mu_branch_check(const Modulus& m);

}  // namespace elrod::stability
